//! Coordinate tuples for the four domains, their scalar torus actions and
//! the eta-projection from C^7 to C^5.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

macro_rules! point_type {
    ($name:ident, $len:expr, $doc:expr) => {
        #[doc = $doc]
        #[derive(Debug, Clone, Copy, PartialEq)]
        pub struct $name {
            pub coords: [Complex64; $len],
        }

        impl $name {
            pub fn new(coords: [Complex64; $len]) -> Result<Self> {
                if coords.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                    return Err(Error::InvalidInput("point has non-finite entries".into()));
                }
                Ok(Self { coords })
            }

            pub fn from_slice(values: &[Complex64]) -> Result<Self> {
                if values.len() != $len {
                    return Err(Error::DimensionMismatch(format!(
                        "expected {} coordinates, got {}",
                        $len,
                        values.len()
                    )));
                }
                let mut coords = [Complex64::default(); $len];
                coords.copy_from_slice(values);
                Self::new(coords)
            }

            pub fn zero() -> Self {
                Self {
                    coords: [Complex64::default(); $len],
                }
            }

            pub fn scale(&self, c: Complex64) -> Self {
                let mut coords = self.coords;
                for z in coords.iter_mut() {
                    *z *= c;
                }
                Self { coords }
            }

            pub fn max_abs(&self) -> f64 {
                self.coords.iter().map(|z| z.norm()).fold(0.0, f64::max)
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let pairs: Vec<[f64; 2]> = self.coords.iter().map(|z| [z.re, z.im]).collect();
                pairs.serialize(serializer)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(
                deserializer: D,
            ) -> std::result::Result<Self, D::Error> {
                let pairs: Vec<[f64; 2]> = Vec::deserialize(deserializer)?;
                if pairs.len() != $len {
                    return Err(D::Error::custom(format!(
                        "expected {} coordinates, got {}",
                        $len,
                        pairs.len()
                    )));
                }
                let mut coords = [Complex64::default(); $len];
                for (c, p) in coords.iter_mut().zip(pairs.iter()) {
                    *c = Complex64::new(p[0], p[1]);
                }
                $name::new(coords).map_err(D::Error::custom)
            }
        }
    };
}

point_type!(Point7, 7, "A point of C^7 in the coordinates of the seven-variable domain.");
point_type!(Point5, 5, "A point (x1, x2, x3, y1, y2) of C^5 in the five-variable domain coordinates.");
point_type!(Point3, 3, "A tetrablock coordinate triple.");

/// Symmetrized-bidisc coordinates (s, p).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub s: [f64; 2],
    pub p: [f64; 2],
}

impl Point2 {
    pub fn new(s: Complex64, p: Complex64) -> Self {
        Self {
            s: [s.re, s.im],
            p: [p.re, p.im],
        }
    }

    pub fn s(&self) -> Complex64 {
        Complex64::new(self.s[0], self.s[1])
    }

    pub fn p(&self) -> Complex64 {
        Complex64::new(self.p[0], self.p[1])
    }
}

/// The three scalar torus actions on C^7 and the one on C^5 that preserve
/// the domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RotationVariant {
    /// (w x1, x2, w x3, w x4, w^2 x5, w x6, w^2 x7)
    V2,
    /// (w x1, w x2, w^2 x3, x4, w x5, w x6, w^2 x7)
    V2P,
    /// (x1, w x2, w x3, w x4, w x5, w^2 x6, w^2 x7)
    V2PP,
    /// (x1, w x2, w^2 x3, w y1, w^2 y2)
    V5,
}

/// Per-coordinate powers of the unimodular factor for each action.
pub fn rotation_powers7(variant: RotationVariant) -> Option<[u32; 7]> {
    match variant {
        RotationVariant::V2 => Some([1, 0, 1, 1, 2, 1, 2]),
        RotationVariant::V2P => Some([1, 1, 2, 0, 1, 1, 2]),
        RotationVariant::V2PP => Some([0, 1, 1, 1, 1, 2, 2]),
        RotationVariant::V5 => None,
    }
}

pub fn rotate_point7(x: &Point7, omega: Complex64, variant: RotationVariant) -> Result<Point7> {
    let powers = rotation_powers7(variant).ok_or_else(|| {
        Error::InvalidInput("V5 acts on five coordinates; use rotate_point5".into())
    })?;
    check_unimodular(omega)?;
    let mut coords = x.coords;
    for (z, &k) in coords.iter_mut().zip(powers.iter()) {
        *z *= omega.powu(k);
    }
    Point7::new(coords)
}

pub fn rotate_point5(x: &Point5, omega: Complex64) -> Result<Point5> {
    check_unimodular(omega)?;
    let [x1, x2, x3, y1, y2] = x.coords;
    let w2 = omega * omega;
    Point5::new([x1, omega * x2, w2 * x3, omega * y1, w2 * y2])
}

fn check_unimodular(omega: Complex64) -> Result<()> {
    if (omega.norm() - 1.0).abs() > 1e-8 {
        return Err(Error::InvalidInput(format!(
            "expected unimodular factor, |omega| = {}",
            omega.norm()
        )));
    }
    Ok(())
}

/// Projection (x1, x3 + eta x5, eta x7, x2 + eta x4, eta x6) from C^7 to C^5.
pub fn eta_project(x: &Point7, eta: Complex64) -> Result<Point5> {
    if eta.norm() > 1.0 + 1e-8 {
        return Err(Error::InvalidInput(format!(
            "eta must lie in the closed disc, |eta| = {}",
            eta.norm()
        )));
    }
    let [x1, x2, x3, x4, x5, x6, x7] = x.coords;
    Point5::new([x1, x3 + eta * x5, eta * x7, x2 + eta * x4, eta * x6])
}
