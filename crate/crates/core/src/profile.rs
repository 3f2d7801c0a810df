//! Hilbert-Samuel profiles: the sequence `chi(j) = lambda(A/(I + m^{j+1}))`
//! with its difference table, and the dimension/multiplicity inference read
//! off from it.
//!
//! The inference is necessarily finite-data: a difference column is accepted
//! as eventually constant when its last three computed entries agree, and
//! otherwise the profile is flagged `TruncationLimited` with a best guess
//! rather than a silent answer.

use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::ideal::span_ideal;
use crate::scheme::SchemePresentation;
use crate::Result;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ProfileStatus {
    Stabilized,
    TruncationLimited,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HsProfile {
    /// `chi[j] = lambda(A/(I + m^{j+1}))`, exact for j = 0 .. kmax-1.
    pub chi: Vec<u64>,
    /// Forward difference table; `diffs[0] = chi`.
    pub diffs: Vec<Vec<i64>>,
    /// Inferred Krull dimension.
    pub dim: u32,
    /// Inferred multiplicity (d! times the leading Hilbert coefficient; the
    /// total length for artinian quotients; 0 for the empty scheme).
    pub mult: u64,
    pub status: ProfileStatus,
}

impl HsProfile {
    pub fn is_stabilized(&self) -> bool {
        self.status == ProfileStatus::Stabilized
    }
}

/// `chi(j)` for j = 0..kmax-1 from a single span at level kmax, plus the
/// dimension/multiplicity inference.
pub fn hs_profile<F: Field>(s: &SchemePresentation<F>, kmax: u32) -> Result<HsProfile> {
    assert!(kmax >= 2, "hs_profile needs kmax >= 2");
    let t = span_ideal(s.field(), s.n(), s.gens(), kmax)?;
    Ok(profile_from_chi(t.chi()))
}

/// Dimension and multiplicity extraction from a chi sequence. Everything the
/// engine infers from Hilbert-Samuel data funnels through here.
pub fn profile_from_chi(chi: Vec<u64>) -> HsProfile {
    // Nakayama: chi is nondecreasing, and one repeat makes it constant onward.
    for w in chi.windows(2) {
        assert!(w[0] <= w[1], "chi must be nondecreasing");
    }
    if let Some(i) = chi.windows(2).position(|w| w[0] == w[1]) {
        assert!(
            chi[i..].iter().all(|&v| v == chi[i]),
            "chi must be constant after a repeat"
        );
    }

    let mut diffs: Vec<Vec<i64>> = vec![chi.iter().map(|&v| v as i64).collect()];
    while diffs.last().map_or(false, |d| d.len() > 1) {
        let prev = diffs.last().expect("nonempty");
        let next: Vec<i64> = prev.windows(2).map(|w| w[1] - w[0]).collect();
        diffs.push(next);
    }

    let constant_tail = |d: &[i64], len: usize| -> Option<i64> {
        if d.len() < len {
            return None;
        }
        let tail = &d[d.len() - len..];
        if tail.iter().all(|&v| v == tail[0]) {
            Some(tail[0])
        } else {
            None
        }
    };

    // empty scheme: the unit ideal gives chi identically zero
    if chi.iter().all(|&v| v == 0) {
        return HsProfile {
            chi,
            diffs,
            dim: 0,
            mult: 0,
            status: ProfileStatus::Stabilized,
        };
    }

    for (r, d) in diffs.iter().enumerate() {
        if let Some(v) = constant_tail(d, 3) {
            if v > 0 {
                return HsProfile {
                    chi,
                    diffs,
                    dim: r as u32,
                    mult: v as u64,
                    status: ProfileStatus::Stabilized,
                };
            }
        }
    }

    // truncation-limited: best guess from a twice-repeated tail, else from
    // the deepest positive difference
    for (r, d) in diffs.iter().enumerate() {
        if let Some(v) = constant_tail(d, 2) {
            if v > 0 {
                return HsProfile {
                    chi,
                    diffs,
                    dim: r as u32,
                    mult: v as u64,
                    status: ProfileStatus::TruncationLimited,
                };
            }
        }
    }
    let mut dim = 0u32;
    let mut mult = *chi.last().expect("chi nonempty");
    for (r, d) in diffs.iter().enumerate() {
        if let Some(&last) = d.last() {
            if last > 0 {
                dim = r as u32;
                mult = last as u64;
            }
        }
    }
    HsProfile {
        chi,
        diffs,
        dim,
        mult,
        status: ProfileStatus::TruncationLimited,
    }
}

/// The (dim, mult, status) triple of a profile.
pub fn dim_and_mult(p: &HsProfile) -> (u32, u64, ProfileStatus) {
    (p.dim, p.mult, p.status)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::TruncatedPoly;

    fn q() -> Rationals {
        Rationals
    }

    fn var(n: u32, i: u32) -> TruncatedPoly<Rationals> {
        TruncatedPoly::variable(q(), n, i)
    }

    #[test]
    fn regular_ring_profile() {
        // zero ideal, n=2, kmax=5: chi starts 1,3,6,10 and fits C(j+2,2)
        let s = SchemePresentation::ambient(q(), 2, "plane");
        let p = hs_profile(&s, 5).unwrap();
        assert_eq!(&p.chi[..4], &[1, 3, 6, 10]);
        for (j, &v) in p.chi.iter().enumerate() {
            let j = j as u64;
            assert_eq!(v, (j + 1) * (j + 2) / 2);
        }
        assert_eq!((p.dim, p.mult), (2, 1));
        assert!(p.is_stabilized());
    }

    #[test]
    fn coordinate_cross_profile() {
        // I = <xy>, n=2: chi(j) = 2j+1, dim 1, mult 2
        let x = var(2, 0);
        let y = var(2, 1);
        let s =
            SchemePresentation::new(q(), 2, vec![x.mul(&y).unwrap()], "cross").unwrap();
        let p = hs_profile(&s, 7).unwrap();
        for (j, &v) in p.chi.iter().enumerate() {
            assert_eq!(v, 2 * j as u64 + 1);
        }
        assert_eq!((p.dim, p.mult), (1, 2));
        assert!(p.is_stabilized());
    }

    #[test]
    fn fat_point_profile() {
        // I = m^2, n=2: chi = 1,3,3,3..., dim 0, mult 3
        let x = var(2, 0);
        let y = var(2, 1);
        let gens = vec![
            x.pow(2).unwrap(),
            x.mul(&y).unwrap(),
            y.pow(2).unwrap(),
        ];
        let s = SchemePresentation::new(q(), 2, gens, "fat point").unwrap();
        let p = hs_profile(&s, 6).unwrap();
        assert_eq!(&p.chi[..3], &[1, 3, 3]);
        assert_eq!((p.dim, p.mult), (0, 3));
        assert!(p.is_stabilized());
    }

    #[test]
    fn regular_3d_profile() {
        let s = SchemePresentation::ambient(q(), 3, "space");
        let p = hs_profile(&s, 7).unwrap();
        assert_eq!((p.dim, p.mult), (3, 1));
        assert!(p.is_stabilized());
    }

    #[test]
    fn truncation_limited_is_flagged() {
        // kmax too small for a 3-dim ring to show three equal third
        // differences
        let s = SchemePresentation::ambient(q(), 3, "space");
        let p = hs_profile(&s, 3).unwrap();
        assert_eq!(p.status, ProfileStatus::TruncationLimited);
    }

    #[test]
    fn empty_scheme_profile() {
        let one = TruncatedPoly::one(q(), 2);
        let s = SchemePresentation::from_parts(q(), 2, vec![one], "empty");
        let p = hs_profile(&s, 4).unwrap();
        assert_eq!((p.dim, p.mult), (0, 0));
        assert!(p.chi.iter().all(|&v| v == 0));
    }
}
