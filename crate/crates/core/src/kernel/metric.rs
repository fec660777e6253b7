use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use super::KernelError;
use crate::typeinf::{Layer, PType};

/// A reduced fraction `num/den` in [0, 1]. `0/1` encodes zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TypeDistance {
    pub num: u64,
    pub den: u64,
}

impl TypeDistance {
    fn new(num: u64, den: u64) -> Self {
        if num == 0 {
            return TypeDistance { num: 0, den: 1 };
        }
        let g = num.gcd(&den);
        TypeDistance { num: num / g, den: den / g }
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for TypeDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn layer_counts(a: Layer<'_>, b: Layer<'_>) -> (u64, u64) {
    match (a, b) {
        (Layer::Edges(x), Layer::Edges(y)) => {
            let inter = x.intersection(y).len() as u64;
            let union = x.union(y).len() as u64;
            (union - inter, union)
        }
        (Layer::Nodes(x), Layer::Nodes(y)) => {
            let inter = x.intersection(y).count() as u64;
            let union = (x.len() + y.len()) as u64 - inter;
            (union - inter, union)
        }
        _ => unreachable!("layers of equal index have equal kind"),
    }
}

/// Normalised Hamming distance Σ|τ_i Δ τ'_i| / Σ|τ_i ∪ τ'_i|.
///
/// `Empty` is at distance 0 from itself and 1 from any typed value.
pub fn hamming_distance(a: &PType, b: &PType) -> Result<TypeDistance, KernelError> {
    let (ha, hb) = match (a.depth(), b.depth()) {
        (None, None) => return Ok(TypeDistance::new(0, 1)),
        (None, Some(_)) | (Some(_), None) => return Ok(TypeDistance::new(1, 1)),
        (Some(x), Some(y)) => (x, y),
    };
    if ha != hb {
        return Err(KernelError::DepthMismatch(ha, hb));
    }
    let (num, den) = (0..=ha).fold((0, 0), |(n, d), i| {
        let (dn, dd) = layer_counts(a.tau(i).unwrap(), b.tau(i).unwrap());
        (n + dn, d + dd)
    });
    Ok(TypeDistance::new(num, den))
}
