//! Poincaré disc model: points, disc motions, distances and midpoints.
//!
//! The oracle and the renderer live in submodules; both work on plain
//! floating point and never consult the coordinate tables.

pub mod oracle;
pub mod svg;

use num_complex::Complex64;

pub use oracle::{
    adjacency_report, central_polygon, degree_census, generate, place, place_tri, AdjacencyReport,
    Generated, Mismatch, PlacedPolygon, PlacedTriangle,
};
pub use svg::{render_svg, Cell, RenderOptions, Scene};

/// A point of the open unit disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint {
    pub x: f64,
    pub y: f64,
}

impl DiscPoint {
    pub const ORIGIN: DiscPoint = DiscPoint { x: 0.0, y: 0.0 };

    /// `None` unless `x² + y² < 1`.
    pub fn new(x: f64, y: f64) -> Option<Self> {
        (x * x + y * y < 1.0).then_some(DiscPoint { x, y })
    }

    pub fn polar(r: f64, angle: f64) -> Option<Self> {
        Self::new(r * angle.cos(), r * angle.sin())
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub(crate) fn from_complex(z: Complex64) -> Self {
        debug_assert!(z.norm_sqr() < 1.0, "{z} left the disc");
        DiscPoint { x: z.re, y: z.im }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn euclid_dist(self, other: DiscPoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Hyperbolic distance.
pub fn distance(a: DiscPoint, b: DiscPoint) -> f64 {
    let (z, w) = (a.to_complex(), b.to_complex());
    let r = (z - w).norm() / (Complex64::new(1.0, 0.0) - z.conj() * w).norm();
    2.0 * r.min(1.0 - f64::EPSILON).atanh()
}

/// Midpoint of the geodesic segment `[a, b]`.
pub fn midpoint(a: DiscPoint, b: DiscPoint) -> DiscPoint {
    let to_origin = Motion::translation(a).inverse();
    let b0 = to_origin.apply_c(b.to_complex());
    let m0 = b0 / (1.0 + (1.0 - b0.norm_sqr()).sqrt());
    DiscPoint::from_complex(to_origin.inverse().apply_c(m0))
}

/// Disc-preserving map `z ↦ (a w + b) / (c w + d)` where `w` is `z`, or its
/// conjugate when `flip` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Motion {
    m: [Complex64; 4],
    flip: bool,
    /// compositions since the last renormalization
    age: u8,
}

const RENORMALIZE_EVERY: u8 = 16;

impl Motion {
    pub fn identity() -> Self {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Motion {
            m: [one, zero, zero, one],
            flip: false,
            age: 0,
        }
    }

    /// Rotation about the origin by `angle`.
    pub fn rotation(angle: f64) -> Self {
        let half = Complex64::from_polar(1.0, angle / 2.0);
        Motion {
            m: [
                half,
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                half.conj(),
            ],
            flip: false,
            age: 0,
        }
    }

    /// The hyperbolic translation taking the origin to `p`.
    pub fn translation(p: DiscPoint) -> Self {
        let a = p.to_complex();
        let one = Complex64::new(1.0, 0.0);
        Motion {
            m: [one, a, a.conj(), one],
            flip: false,
            age: 0,
        }
        .normalized()
    }

    /// Reflection in the line through the origin at angle `angle`.
    pub fn reflection_through_origin(angle: f64) -> Self {
        let e = Complex64::from_polar(1.0, angle);
        Motion {
            m: [
                e,
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                e.conj(),
            ],
            flip: true,
            age: 0,
        }
    }

    /// Reflection in the geodesic through `a` and `b`.
    pub fn reflection(a: DiscPoint, b: DiscPoint) -> Self {
        let t = Motion::translation(a);
        let theta = t.inverse().apply_c(b.to_complex()).arg();
        t.compose(&Motion::reflection_through_origin(theta))
            .compose(&t.inverse())
    }

    pub fn is_reflection(&self) -> bool {
        self.flip
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Motion) -> Motion {
        let o = if self.flip {
            other.m.map(|c| c.conj())
        } else {
            other.m
        };
        let s = &self.m;
        let product = Motion {
            m: [
                s[0] * o[0] + s[1] * o[2],
                s[0] * o[1] + s[1] * o[3],
                s[2] * o[0] + s[3] * o[2],
                s[2] * o[1] + s[3] * o[3],
            ],
            flip: self.flip ^ other.flip,
            age: self.age.max(other.age) + 1,
        };
        if product.age >= RENORMALIZE_EVERY {
            product.normalized()
        } else {
            product
        }
    }

    pub fn inverse(&self) -> Motion {
        let [a, b, c, d] = self.m;
        let adj = [d, -b, -c, a];
        Motion {
            m: if self.flip {
                adj.map(|z| z.conj())
            } else {
                adj
            },
            flip: self.flip,
            age: self.age,
        }
    }

    /// Rescales to determinant 1 and projects back onto the form
    /// `[[a, b], [b̄, ā]]`.
    pub fn normalized(&self) -> Motion {
        let [a, b, c, d] = self.m;
        let k = (a * d - b * c).sqrt();
        let (a, b, c, d) = (a / k, b / k, c / k, d / k);
        let a = (a + d.conj()) / 2.0;
        let b = (b + c.conj()) / 2.0;
        Motion {
            m: [a, b, b.conj(), a.conj()],
            flip: self.flip,
            age: 0,
        }
    }

    fn apply_c(&self, z: Complex64) -> Complex64 {
        let w = if self.flip { z.conj() } else { z };
        let [a, b, c, d] = self.m;
        (a * w + b) / (c * w + d)
    }

    pub fn apply(&self, p: DiscPoint) -> DiscPoint {
        DiscPoint::from_complex(self.apply_c(p.to_complex()))
    }
}
