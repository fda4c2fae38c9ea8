//! Pairwise averaging maps on sequences.
//!
//! Coordinates here are 1-based. `averaging_map(i, j, s)` keeps
//! `s_1..s_{i-1}`, replaces the block `s_i..s_{2j-i-1}` by its `j - i` pair
//! averages and shifts the tail `s_{2j-i}, ...` left by `j - i`.

use crate::error::{Error, Result};
use crate::ratcore::{rat, RatMat, Rat};
use crate::seqlat::EpSeq;

fn half() -> Rat {
    rat(1, 2)
}

fn pair_average(s: &EpSeq, first: usize) -> Rat {
    (s.term(first) + s.term(first + 1)) * half()
}

pub fn averaging_map(i: usize, j: usize, s: &EpSeq) -> Result<EpSeq> {
    if i == 0 || j < i {
        return Err(Error::BadIndices { i, j });
    }
    if i == j {
        return Ok(s.clone());
    }
    let shift = j - i;
    let start = i - 1;
    let settled = (j - 1).max(s.prefix().len().saturating_sub(shift));
    Ok(EpSeq::from_fn(settled, s.period().len(), |m| {
        if m < start {
            s.term(m).clone()
        } else if m < j - 1 {
            pair_average(s, start + 2 * (m - start))
        } else {
            s.term(m + shift).clone()
        }
    }))
}

/// `(s_1, ..., s_{i-1}, (s_i+s_{i+1})/2, (s_{i+2}+s_{i+3})/2, ...)`.
pub fn xprime(i: usize, s: &EpSeq) -> Result<EpSeq> {
    if i == 0 {
        return Err(Error::BadIndices { i, j: i });
    }
    let start = i - 1;
    let l = s.prefix().len();
    // pair t reads terms start+2t and start+2t+1, periodic once start+2t >= l
    let first_periodic_pair = l.saturating_sub(start).div_ceil(2);
    let p = s.period().len();
    let pair_period = if p % 2 == 0 { p / 2 } else { p };
    Ok(EpSeq::from_fn(start + first_periodic_pair, pair_period, |m| {
        if m < start {
            s.term(m).clone()
        } else {
            pair_average(s, start + 2 * (m - start))
        }
    }))
}

/// Matrix of `averaging_map(i, j, -)` acting on the first `n` coordinates.
///
/// The result has `n - (j - i)` rows; it is the map a finitely supported
/// sequence with support in `1..=n` sees.
pub fn averaging_matrix(i: usize, j: usize, n: usize) -> Result<RatMat> {
    if i == 0 || j < i || n + i + 1 < 2 * j {
        return Err(Error::BadIndices { i, j });
    }
    let shift = j - i;
    let rows = n - shift;
    let mut m = RatMat::zeros(rows, n);
    for r in 0..rows {
        if r < i - 1 {
            m.set(r, r, Rat::from_integer(1.into()));
        } else if r < j - 1 {
            let c = i - 1 + 2 * (r - (i - 1));
            m.set(r, c, half());
            m.set(r, c + 1, half());
        } else {
            m.set(r, r + shift, Rat::from_integer(1.into()));
        }
    }
    Ok(m)
}

/// An index `j >= i` with `averaging_map(i, j, s) == xprime(i, s)`, for
/// finitely supported `s`. Every larger `j` gives the same image.
pub fn stable_index(i: usize, s: &EpSeq) -> Option<usize> {
    let end = s.support_end()?;
    Some(i.max((end + i) / 2 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::{int, RatVec};
    use crate::sampling::Sampler;
    use crate::seqlat::{ep_norm, NormValue, SpaceTag};

    fn seq(prefix: &[i64], period: &[i64]) -> EpSeq {
        EpSeq::new(
            prefix.iter().map(|&x| int(x)).collect(),
            period.iter().map(|&x| int(x)).collect(),
        )
        .unwrap()
    }

    /// Direct evaluation from the defining formula, term by term.
    fn oracle_term(i: usize, j: usize, s: &EpSeq, m: usize) -> Rat {
        // m is 1-based
        if m < i {
            s.coord(m).clone()
        } else if m < j {
            let k = i + 2 * (m - i);
            (s.coord(k) + s.coord(k + 1)) / int(2)
        } else {
            s.coord(m + j - i).clone()
        }
    }

    #[test]
    fn examples() {
        assert_eq!(averaging_map(1, 2, &seq(&[1, 1], &[0])).unwrap(), seq(&[1], &[0]));
        let s = seq(&[3, 1, 4], &[1, 5]);
        assert_eq!(averaging_map(3, 3, &s).unwrap(), s);
        assert_eq!(
            averaging_map(1, 2, &EpSeq::alternating()).unwrap(),
            seq(&[0], &[1, -1])
        );
        assert_eq!(averaging_map(2, 1, &s), Err(Error::BadIndices { i: 2, j: 1 }));
        assert_eq!(averaging_map(0, 1, &s), Err(Error::BadIndices { i: 0, j: 1 }));
    }

    #[test]
    fn xprime_examples() {
        assert_eq!(xprime(1, &seq(&[1, 1], &[0])).unwrap(), seq(&[1], &[0]));
        let (a, b, c) = (rat(2, 3), int(-5), rat(7, 4));
        let s = EpSeq::new(vec![a.clone(), b.clone()], vec![c.clone()]).unwrap();
        assert_eq!(xprime(3, &s).unwrap(), s);
        assert!(xprime(1, &EpSeq::alternating()).unwrap().is_zero());
        // odd period doubled: (1,2,3,1,2,3,...) pairs to (3/2, 2, 5/2, 3/2, ...)
        let t = seq(&[], &[1, 2, 3]);
        let xp = xprime(1, &t).unwrap();
        assert_eq!(xp.period(), &[rat(3, 2), int(2), rat(5, 2)]);
    }

    #[test]
    fn agrees_with_formula() {
        let mut sampler = Sampler::new(5);
        for _ in 0..300 {
            let s = sampler.eventually_periodic(5, 4, false);
            let i = sampler.between(1, 6);
            let j = sampler.between(i, 9);
            let out = averaging_map(i, j, &s).unwrap();
            for m in 1..40 {
                assert_eq!(*out.coord(m), oracle_term(i, j, &s, m), "i={i} j={j} s={s} m={m}");
            }
            let xp = xprime(i, &s).unwrap();
            for m in 1..40 {
                let expect = if m < i {
                    s.coord(m).clone()
                } else {
                    let k = i + 2 * (m - i);
                    (s.coord(k) + s.coord(k + 1)) / int(2)
                };
                assert_eq!(*xp.coord(m), expect);
            }
        }
    }

    #[test]
    fn cocycle_law() {
        let mut sampler = Sampler::new(17);
        for _ in 0..300 {
            let s = sampler.eventually_periodic(6, 4, false);
            let i = sampler.between(1, 8);
            let j = sampler.between(i, 8);
            let k = sampler.between(j, 8);
            let two_step = averaging_map(j, k, &averaging_map(i, j, &s).unwrap()).unwrap();
            assert_eq!(two_step, averaging_map(i, k, &s).unwrap(), "i={i} j={j} k={k} s={s}");
        }
    }

    #[test]
    fn contraction_and_positivity() {
        let mut sampler = Sampler::new(23);
        for _ in 0..300 {
            let i = sampler.between(1, 6);
            let j = sampler.between(i, 9);
            let s = sampler.eventually_periodic(5, 3, false);
            let out = averaging_map(i, j, &s).unwrap();
            assert!(out.sup_abs() <= s.sup_abs());
            let f = sampler.finite_support(8, false);
            let fo = averaging_map(i, j, &f).unwrap();
            let n1 = |x: &EpSeq| match ep_norm(x, SpaceTag::Lp(1)).unwrap() {
                NormValue::Exact(v) => v,
                other => panic!("{other:?}"),
            };
            assert!(n1(&fo) <= n1(&f));
            let pos = sampler.eventually_periodic(5, 3, true);
            assert!(averaging_map(i, j, &pos).unwrap().is_nonnegative());
        }
    }

    #[test]
    fn l1_norm_stabilizes_at_xprime() {
        let mut sampler = Sampler::new(29);
        for _ in 0..200 {
            let s = sampler.finite_support(9, false);
            let i = sampler.between(1, 5);
            let target = ep_norm(&xprime(i, &s).unwrap(), SpaceTag::Lp(1)).unwrap();
            let stable = stable_index(i, &s).unwrap();
            for j in stable..stable + 5 {
                let image = averaging_map(i, j, &s).unwrap();
                assert_eq!(image, xprime(i, &s).unwrap());
                assert_eq!(ep_norm(&image, SpaceTag::Lp(1)).unwrap(), target);
            }
        }
    }

    #[test]
    fn matrix_matches_sequence_map() {
        let m = averaging_matrix(1, 2, 4).unwrap();
        let expect = RatMat::from_rows(
            4,
            vec![
                vec![rat(1, 2), rat(1, 2), int(0), int(0)],
                vec![int(0), int(0), int(1), int(0)],
                vec![int(0), int(0), int(0), int(1)],
            ],
        )
        .unwrap();
        assert_eq!(m, expect);
        let mut sampler = Sampler::new(31);
        for _ in 0..100 {
            let i = sampler.between(1, 4);
            let j = sampler.between(i, 6);
            let n = 2 * j - i - 1 + sampler.between(0, 3);
            let m = averaging_matrix(i, j, n).unwrap();
            let x = sampler.vector(n);
            let image = averaging_map(i, j, &EpSeq::finite(x.entries().to_vec())).unwrap();
            let y: RatVec = m.apply(&x).unwrap();
            assert_eq!(image, EpSeq::finite(y.into_entries()));
        }
    }
}
