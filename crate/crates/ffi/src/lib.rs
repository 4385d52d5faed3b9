//! C interface to `hypergrid`.
//!
//! Every function returns an [`HgStatus`]. Strings are NUL-terminated UTF-8.
//! Functions writing text take a buffer and its capacity, and report the
//! bytes needed (terminator included) through `needed` when it is non-null,
//! so callers can retry with [`HgStatus::BufferTooSmall`]. The message for
//! the last failure on the calling thread is kept for [`hg_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hypergrid::ca::{self, Region, Rule};
use hypergrid::numeration::{Basis, DigitString};
use hypergrid::Tiling;
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    BufferTooSmall = 4,
    Internal = 5,
}

/// Opaque handle to one of the supported tilings.
pub struct HgTiling {
    tiling: Tiling,
}

/// Opaque handle to a cellular automaton: region, rule and current state.
pub struct HgCa {
    region: Region,
    rule: Rule,
    state: Vec<u32>,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

struct Failure(HgStatus, String);

impl From<hypergrid::Error> for Failure {
    fn from(e: hypergrid::Error) -> Self {
        use hypergrid::Error as E;
        let status = match e {
            E::Parse { .. } | E::Rule { .. } => HgStatus::Parse,
            _ => HgStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HgStatus {
    let outcome = catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| Err(Failure(HgStatus::Internal, "panic inside hypergrid".into())));
    match outcome {
        Ok(()) => HgStatus::Ok,
        Err(Failure(status, msg)) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = msg);
            status
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(HgStatus::NullPointer, format!("{what} is null"))
}

unsafe fn as_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn as_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(HgStatus::Parse, format!("{what} is not UTF-8")))
}

/// Copies `text` and a terminator into `buf`.
unsafe fn write_text(
    text: &str,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> Result<(), Failure> {
    let len = text.len() + 1;
    if !needed.is_null() {
        *needed = len;
    }
    if buf.is_null() {
        return Err(null("buf"));
    }
    if cap < len {
        return Err(Failure(
            HgStatus::BufferTooSmall,
            format!("{len} bytes needed, {cap} given"),
        ));
    }
    ptr::copy_nonoverlapping(text.as_ptr(), buf.cast::<u8>(), text.len());
    *buf.add(text.len()) = 0;
    Ok(())
}

/// Copies the last error message of this thread, empty if none.
///
/// # Safety
/// `buf` must be valid for `cap` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn hg_last_error(
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> HgStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    match write_text(&msg, buf, cap, needed) {
        Ok(()) => HgStatus::Ok,
        Err(Failure(status, _)) => status,
    }
}

/// Creates a handle for `{p,q}`; only `{7,3}` and `{5,4}` are supported.
///
/// # Safety
/// `out` must be valid for a write. Release the handle with
/// [`hg_tiling_free`].
#[no_mangle]
pub unsafe extern "C" fn hg_tiling_new(p: u32, q: u32, out: *mut *mut HgTiling) -> HgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let tiling = Tiling::from_pq(p, q)?;
        *out = Box::into_raw(Box::new(HgTiling { tiling }));
        Ok(())
    })
}

/// # Safety
/// `tiling` must come from [`hg_tiling_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hg_tiling_free(tiling: *mut HgTiling) {
    if !tiling.is_null() {
        drop(Box::from_raw(tiling));
    }
}

/// Neighbor of the tile `coord` (`"0"` or `"sector:node"`) across `side`,
/// and the number of that side in the neighbor.
///
/// # Safety
/// Pointers must be valid; `buf` for `cap` bytes. `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn hg_tile_neighbor(
    tiling: *const HgTiling,
    coord: *const c_char,
    side: u32,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
    side_in_neighbor: *mut u32,
) -> HgStatus {
    guard(|| {
        let tiling = as_ref(tiling, "tiling")?.tiling;
        let c = tiling.parse_tile(as_str(coord, "coord")?)?;
        let (n, back) = tiling.neighbor_and_side(c, side)?;
        write_text(&n.to_string(), buf, cap, needed)?;
        if !side_in_neighbor.is_null() {
            *side_in_neighbor = back;
        }
        Ok(())
    })
}

/// Neighbors 1, 2 and 3 of the triangle `coord` (`"tile/a1.a2..."`), one
/// per line.
///
/// # Safety
/// Pointers must be valid; `buf` for `cap` bytes. `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn hg_tri_neighbors(
    tiling: *const HgTiling,
    coord: *const c_char,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> HgStatus {
    guard(|| {
        let tiling = as_ref(tiling, "tiling")?.tiling;
        let t = tiling.parse_tri(as_str(coord, "coord")?)?;
        let [a, b, c] = tiling.tri_neighbors(&t)?;
        write_text(&format!("{a}\n{b}\n{c}"), buf, cap, needed)
    })
}

/// Greedy representation of `value` over the basis of `{p,q}`.
///
/// # Safety
/// `buf` must be valid for `cap` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn hg_num_encode(
    p: u32,
    q: u32,
    value: u64,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> HgStatus {
    guard(|| {
        let digits = Basis::new(p, q, 3)?.encode_u64(value);
        write_text(&digits.to_string(), buf, cap, needed)
    })
}

/// Value of a digit string over the basis of `{p,q}`; fails if it exceeds
/// `u64`.
///
/// # Safety
/// `digits` must be a valid string and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hg_num_decode(
    p: u32,
    q: u32,
    digits: *const c_char,
    out: *mut u64,
) -> HgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = as_str(digits, "digits")?;
        let digits: DigitString = text.parse()?;
        let value = Basis::new(p, q, 3)?.decode(&digits);
        *out = value.to_u64().ok_or_else(|| {
            Failure(
                HgStatus::InvalidArgument,
                format!("{text} decodes past 64 bits"),
            )
        })?;
        Ok(())
    })
}

/// Builds an automaton on the `subdiv`-triangles within `level` tiles of the
/// centre. `rule` is the text of a rule file, `seed` lists
/// `coord=state` pairs separated by commas and may be empty or null.
///
/// # Safety
/// Pointers must be valid. Release the handle with [`hg_ca_free`].
#[no_mangle]
pub unsafe extern "C" fn hg_ca_new(
    tiling: *const HgTiling,
    rule: *const c_char,
    level: u32,
    subdiv: usize,
    seed: *const c_char,
    out: *mut *mut HgCa,
) -> HgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let tiling = as_ref(tiling, "tiling")?.tiling;
        let rule = Rule::parse(as_str(rule, "rule")?)?;
        let seed = if seed.is_null() {
            ""
        } else {
            as_str(seed, "seed")?
        };
        let region = ca::build_region(tiling, level, subdiv)?;
        let state = region.seeded(seed, rule.boundary())?;
        *out = Box::into_raw(Box::new(HgCa {
            region,
            rule,
            state,
        }));
        Ok(())
    })
}

/// # Safety
/// `ca` must come from [`hg_ca_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hg_ca_free(ca: *mut HgCa) {
    if !ca.is_null() {
        drop(Box::from_raw(ca));
    }
}

/// Advances `steps` synchronous updates.
///
/// # Safety
/// `ca` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hg_ca_step(ca: *mut HgCa, steps: usize) -> HgStatus {
    guard(|| {
        let ca = ca.as_mut().ok_or_else(|| null("ca"))?;
        for _ in 0..steps {
            ca.state = ca::step(&ca.region, &ca.rule, &ca.state)?;
        }
        Ok(())
    })
}

/// Number of cells in the region.
///
/// # Safety
/// `ca` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hg_ca_len(ca: *const HgCa, out: *mut usize) -> HgStatus {
    guard(|| {
        let ca = as_ref(ca, "ca")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ca.region.len();
        Ok(())
    })
}

/// Hash of the current frame, as printed by `hypergrid ca run`.
///
/// # Safety
/// `ca` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hg_ca_hash(ca: *const HgCa, out: *mut u64) -> HgStatus {
    guard(|| {
        let ca = as_ref(ca, "ca")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ca::frame_hash(&ca.state);
        Ok(())
    })
}

/// Copies the current states, in region order, into `buf`.
///
/// # Safety
/// `ca` must be a live handle and `buf` valid for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn hg_ca_states(ca: *const HgCa, buf: *mut u32, cap: usize) -> HgStatus {
    guard(|| {
        let ca = as_ref(ca, "ca")?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        if cap < ca.state.len() {
            return Err(Failure(
                HgStatus::BufferTooSmall,
                format!("{} states, room for {cap}", ca.state.len()),
            ));
        }
        ptr::copy_nonoverlapping(ca.state.as_ptr(), buf, ca.state.len());
        Ok(())
    })
}
