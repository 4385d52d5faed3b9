use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use hypergrid_ffi::*;

fn text(buf: &[c_char]) -> String {
    unsafe { CStr::from_ptr(buf.as_ptr()) }
        .to_str()
        .unwrap()
        .to_owned()
}

fn heptagrid() -> *mut HgTiling {
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { hg_tiling_new(7, 3, &mut t) }, HgStatus::Ok);
    t
}

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    assert_eq!(
        unsafe { hg_last_error(buf.as_mut_ptr(), buf.len(), ptr::null_mut()) },
        HgStatus::Ok
    );
    text(&buf)
}

#[test]
fn tile_and_triangle_queries() {
    let t = heptagrid();
    let mut buf = [0 as c_char; 64];
    let mut needed = 0;
    let mut back = 0;
    let coord = CString::new("2:1").unwrap();
    let status = unsafe {
        hg_tile_neighbor(
            t,
            coord.as_ptr(),
            7,
            buf.as_mut_ptr(),
            buf.len(),
            &mut needed,
            &mut back,
        )
    };
    assert_eq!(status, HgStatus::Ok);
    assert_eq!((text(&buf), back, needed), ("3:1".to_owned(), 2, 4));

    let coord = CString::new("0/1.0.1").unwrap();
    let status = unsafe {
        hg_tri_neighbors(
            t,
            coord.as_ptr(),
            buf.as_mut_ptr(),
            buf.len(),
            ptr::null_mut(),
        )
    };
    assert_eq!(status, HgStatus::Ok);
    assert_eq!(text(&buf).lines().nth(2), Some("0/1.3.1"));
    unsafe { hg_tiling_free(t) };
}

#[test]
fn errors_have_codes_and_messages() {
    let t = heptagrid();
    let mut buf = [0 as c_char; 8];
    let mut needed = 0;
    let coord = CString::new("1:1/3.9").unwrap();
    let status =
        unsafe { hg_tri_neighbors(t, coord.as_ptr(), buf.as_mut_ptr(), buf.len(), &mut needed) };
    assert_eq!(status, HgStatus::Parse);
    assert!(last_error().contains("1:1/3.9"));

    let coord = CString::new("1:1/3").unwrap();
    let status =
        unsafe { hg_tri_neighbors(t, coord.as_ptr(), buf.as_mut_ptr(), buf.len(), &mut needed) };
    assert_eq!(status, HgStatus::BufferTooSmall);
    let expected = hypergrid::Tiling::Heptagrid
        .tri_neighbors(&hypergrid::Tiling::Heptagrid.parse_tri("1:1/3").unwrap())
        .unwrap()
        .map(|n| n.to_string())
        .join("\n");
    assert_eq!(needed, expected.len() + 1);

    assert_eq!(
        unsafe {
            hg_tri_neighbors(
                ptr::null(),
                coord.as_ptr(),
                buf.as_mut_ptr(),
                8,
                ptr::null_mut(),
            )
        },
        HgStatus::NullPointer
    );
    let mut other = ptr::null_mut();
    assert_eq!(
        unsafe { hg_tiling_new(4, 4, &mut other) },
        HgStatus::InvalidArgument
    );
    assert!(other.is_null());
    unsafe { hg_tiling_free(t) };
}

#[test]
fn numeration() {
    let mut buf = [0 as c_char; 32];
    assert_eq!(
        unsafe { hg_num_encode(5, 4, 10, buf.as_mut_ptr(), buf.len(), ptr::null_mut()) },
        HgStatus::Ok
    );
    assert_eq!(text(&buf), "102");
    let mut value = 0;
    let digits = CString::new("102").unwrap();
    assert_eq!(
        unsafe { hg_num_decode(5, 4, digits.as_ptr(), &mut value) },
        HgStatus::Ok
    );
    assert_eq!(value, 10);
    let huge = CString::new("1".repeat(60)).unwrap();
    assert_eq!(
        unsafe { hg_num_decode(5, 4, huge.as_ptr(), &mut value) },
        HgStatus::InvalidArgument
    );
}

#[test]
fn automaton_matches_the_library() {
    let t = heptagrid();
    let rule_text = "alphabet 2\nboundary 0\ntotalistic\n0 1 -> 1\n0 2 -> 1\n0 3 -> 1\n";
    let (rule, seed) = (
        CString::new(rule_text).unwrap(),
        CString::new("0/1.3=1").unwrap(),
    );
    let mut ca = ptr::null_mut();
    assert_eq!(
        unsafe { hg_ca_new(t, rule.as_ptr(), 2, 2, seed.as_ptr(), &mut ca) },
        HgStatus::Ok
    );
    assert_eq!(unsafe { hg_ca_step(ca, 3) }, HgStatus::Ok);
    let mut hash = 0;
    assert_eq!(unsafe { hg_ca_hash(ca, &mut hash) }, HgStatus::Ok);

    let region = hypergrid::ca::build_region(hypergrid::Tiling::Heptagrid, 2, 2).unwrap();
    let rule = hypergrid::ca::Rule::parse(rule_text).unwrap();
    let start = region.seeded("0/1.3=1", 0).unwrap();
    let expected = hypergrid::ca::run(&region, &rule, &start, 3).unwrap();
    assert_eq!(hash, expected.hashes[3]);

    let mut len = 0;
    assert_eq!(unsafe { hg_ca_len(ca, &mut len) }, HgStatus::Ok);
    let mut states = vec![0u32; len];
    assert_eq!(
        unsafe { hg_ca_states(ca, states.as_mut_ptr(), len - 1) },
        HgStatus::BufferTooSmall
    );
    assert_eq!(
        unsafe { hg_ca_states(ca, states.as_mut_ptr(), len) },
        HgStatus::Ok
    );
    assert_eq!(states, expected.frames[3]);

    let bad = CString::new("alphabet 2\ntotalistic\n0 0 -> 1\n").unwrap();
    let mut other = ptr::null_mut();
    assert_eq!(
        unsafe { hg_ca_new(t, bad.as_ptr(), 1, 1, ptr::null(), &mut other) },
        HgStatus::Parse
    );
    assert!(last_error().contains("boundary"), "{}", last_error());
    unsafe {
        hg_ca_free(ca);
        hg_tiling_free(t);
    }
}

/// Compiles the C smoke test against the generated header and the static
/// library.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libhypergrid_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("hypergrid_smoke");
    let cc = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("a C compiler");
    assert!(cc.success());
    let run = Command::new(&out).output().unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}
