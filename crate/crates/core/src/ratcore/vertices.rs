use num_traits::{Signed, Zero};

use super::linalg::RatVec;
use crate::error::{Error, Result};

/// All vertices of the order interval `[0, c]`.
///
/// Only the support of `c` branches, so the result has `2^|support(c)|`
/// entries. Vertex `m` takes `c_k` on the support positions whose bit is set
/// in `m` (support positions in ascending order) and `0` elsewhere.
pub fn box_vertices(c: &RatVec, cap: usize) -> Result<Vec<RatVec>> {
    if c.iter().any(|x| x.is_negative()) {
        return Err(Error::PreconditionViolated(format!("box corner {c} is not >= 0")));
    }
    let support = c.support();
    let s = support.len();
    if s >= usize::BITS as usize || (1usize << s) > cap {
        return Err(Error::SupportTooLarge { support: s, cap });
    }
    Ok((0..1usize << s)
        .map(|mask| {
            let mut v = RatVec::zeros(c.dim());
            for (bit, &k) in support.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    v.set(k, c[k].clone());
                }
            }
            v
        })
        .collect())
}

/// True when every coordinate of `v` is `0` or equal to the matching one of `c`.
pub fn is_box_vertex(c: &RatVec, v: &RatVec) -> bool {
    c.dim() == v.dim() && c.iter().zip(v.iter()).all(|(a, b)| b.is_zero() || a == b)
}
