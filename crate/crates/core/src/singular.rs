//! Singular-locus schemes via Jacobian minors, and the stabilized colengths
//! built on them: Milnor numbers, Tjurina numbers, and section invariants.
//!
//! Length computations raise the truncation level until two consecutive
//! colengths agree; by Nakayama that agreement certifies exactness, so a
//! finite answer is never a guess. A computation that fails to stabilize by
//! the cap reports `Unbounded` together with the dimension estimate of the
//! offending locus, so callers can tell "non-isolated" from "cap too small".

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::field::Field;
use crate::ideal::span_ideal;
use crate::poly::{implicit_solve, Trunc, TruncatedPoly};
use crate::profile::{profile_from_chi, HsProfile, ProfileStatus};
use crate::scheme::SchemePresentation;
use crate::Result;

/// Result of a stabilized length computation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum StabilizedLength {
    Finite(u64),
    /// No stabilization by the cap; carries the Hilbert-growth dimension
    /// estimate of the locus at the cap.
    Unbounded { cap: u32, dim_estimate: u32 },
}

impl StabilizedLength {
    pub fn as_finite(&self) -> Option<u64> {
        match self {
            StabilizedLength::Finite(v) => Some(*v),
            StabilizedLength::Unbounded { .. } => None,
        }
    }

    pub fn expect_finite(&self, what: &str) -> Result<u64> {
        match self {
            StabilizedLength::Finite(v) => Ok(*v),
            StabilizedLength::Unbounded { cap, dim_estimate } => {
                let _ = what;
                Err(Error::UnboundedInvariant {
                    cap: *cap,
                    dim_estimate: *dim_estimate,
                })
            }
        }
    }
}

enum ScanOutcome {
    Finite(u64),
    NotByLevel { chi: Vec<u64> },
}

fn scan_levels<F: Field>(
    field: &F,
    n: u32,
    gens: &[TruncatedPoly<F>],
    cap: u32,
) -> Result<ScanOutcome> {
    let mut k = 4.min(cap).max(2);
    loop {
        let t = span_ideal(field, n, gens, k)?;
        let chi = t.chi();
        if let Some(i) = chi.windows(2).position(|w| w[0] == w[1]) {
            // lambda(A/(J+m^{i+1})) = lambda(A/(J+m^{i+2})) pins the length
            return Ok(ScanOutcome::Finite(chi[i]));
        }
        if k >= cap {
            return Ok(ScanOutcome::NotByLevel { chi });
        }
        k = (k + (k / 2).max(2)).min(cap);
    }
}

/// `lambda(A/<gens>)` by level escalation up to `cap`.
pub fn stabilized_colength<F: Field>(
    field: &F,
    n: u32,
    gens: &[TruncatedPoly<F>],
    cap: u32,
) -> Result<StabilizedLength> {
    match scan_levels(field, n, gens, cap)? {
        ScanOutcome::Finite(v) => Ok(StabilizedLength::Finite(v)),
        ScanOutcome::NotByLevel { chi } => {
            let profile = profile_from_chi(chi);
            Ok(StabilizedLength::Unbounded {
                cap,
                dim_estimate: profile.dim,
            })
        }
    }
}

/// All `(n - alpha) x (n - alpha)` minors of the Jacobian matrix of the
/// generators, normalized monic (local order) and deduplicated. Degenerate
/// sizes follow the usual conventions: size 0 gives the unit ideal, size
/// larger than the matrix gives the zero ideal (no minors).
pub fn jacobian_minor_ideal<F: Field>(
    field: &F,
    n: u32,
    gens: &[TruncatedPoly<F>],
    alpha: u32,
) -> Result<Vec<TruncatedPoly<F>>> {
    if alpha > n {
        return Err(Error::Usage(format!(
            "alpha = {alpha} exceeds the ambient dimension {n}"
        )));
    }
    let q = (n - alpha) as usize;
    let s = gens.len();
    if q == 0 {
        return Ok(vec![TruncatedPoly::one(field.clone(), n)]);
    }
    if q > s.min(n as usize) {
        return Ok(Vec::new());
    }
    let jac: Vec<Vec<TruncatedPoly<F>>> = gens
        .iter()
        .map(|g| (0..n).map(|v| g.derivative(v)).collect())
        .collect();
    let row_sets = combinations(s, q);
    let col_sets = combinations(n as usize, q);
    let mut minors: Vec<TruncatedPoly<F>> = Vec::new();
    for rows in &row_sets {
        for cols in &col_sets {
            let det = minor_det(field, &jac, rows, cols)?;
            if det.is_zero() {
                continue;
            }
            let lead = det.leading().expect("nonzero").1.clone();
            let inv = field.inv(&lead).expect("nonzero leading coefficient");
            let monic = det.scale(&inv);
            if !minors.contains(&monic) {
                minors.push(monic);
            }
        }
    }
    Ok(minors)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn minor_det<F: Field>(
    field: &F,
    jac: &[Vec<TruncatedPoly<F>>],
    rows: &[usize],
    cols: &[usize],
) -> Result<TruncatedPoly<F>> {
    let n_amb = jac[0][0].n();
    let q = rows.len();
    if q == 1 {
        return Ok(jac[rows[0]][cols[0]].clone());
    }
    // Laplace expansion along the first row; minors stay tiny here.
    let mut acc = TruncatedPoly::zero(field.clone(), n_amb);
    for (j, &c) in cols.iter().enumerate() {
        let entry = &jac[rows[0]][c];
        if entry.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols
            .iter()
            .copied()
            .filter(|&cc| cc != c)
            .collect();
        let sub = minor_det(field, jac, &rows[1..], &sub_cols)?;
        let term = entry.mul(&sub)?;
        acc = if j % 2 == 0 {
            acc.add(&term)?
        } else {
            acc.sub(&term)?
        };
    }
    Ok(acc)
}

/// The singular-locus scheme `Sigma^alpha`: the presentation of X (plus the
/// section h, when given) together with the `(n-alpha)`-minors of the
/// Jacobian of those generators. Whether `alpha` matches the actual dimension
/// of the section is the caller's responsibility; see
/// [`dimension_warning`].
pub fn singular_scheme<F: Field>(
    x: &SchemePresentation<F>,
    h: Option<&TruncatedPoly<F>>,
    alpha: u32,
) -> Result<SchemePresentation<F>> {
    let mut gens = x.gens().to_vec();
    if let Some(h) = h {
        if h.n() != x.n() {
            return Err(Error::AmbientMismatch(h.n(), x.n()));
        }
        gens.push(h.clone());
    }
    let minors = jacobian_minor_ideal(x.field(), x.n(), &gens, alpha)?;
    let label = match h {
        Some(_) => format!("Sigma^{}({} ∩ H)", alpha, x.label()),
        None => format!("Sigma^{}({})", alpha, x.label()),
    };
    let mut all = gens;
    all.extend(minors);
    Ok(SchemePresentation::from_parts(
        x.field().clone(),
        x.n(),
        all,
        label,
    ))
}

/// Flags a mismatch between the declared `alpha` and the Hilbert-growth
/// dimension of the section scheme itself (a zero-divisor symptom: the
/// section then has the dimension of X, not one less).
pub fn dimension_warning<F: Field>(
    x: &SchemePresentation<F>,
    h: &TruncatedPoly<F>,
    alpha: u32,
    kmax: u32,
) -> Result<Option<String>> {
    let section = x.with_extra(h.clone(), format!("{} ∩ H", x.label()))?;
    let p = crate::profile::hs_profile(&section, kmax)?;
    if p.is_stabilized() && p.dim != alpha {
        return Ok(Some(format!(
            "section scheme has Hilbert-growth dimension {} but alpha = {alpha}",
            p.dim
        )));
    }
    Ok(None)
}

/// Milnor number: `lambda(A / <partials of h>)`, stabilized; `Unbounded`
/// carries the Jacobian-scheme dimension estimate.
pub fn milnor_number<F: Field>(h: &TruncatedPoly<F>, cap: u32) -> Result<StabilizedLength> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial("milnor number of 0 is undefined"));
    }
    if !h.field().is_zero(&h.constant_term()) {
        return Err(Error::NonzeroConstantTerm);
    }
    let field = h.field().clone();
    let n = h.n();
    let partials: Vec<TruncatedPoly<F>> = (0..n).map(|v| h.derivative(v)).collect();
    stabilized_colength(&field, n, &partials, cap)
}

/// Tjurina number: `lambda(O_Sigma)` for the singular scheme of X (with the
/// optional section appended), with the same stabilization contract as
/// `milnor_number`.
pub fn tjurina_number<F: Field>(
    x: &SchemePresentation<F>,
    h: Option<&TruncatedPoly<F>>,
    alpha: u32,
    cap: u32,
) -> Result<StabilizedLength> {
    let sigma = singular_scheme(x, h, alpha)?;
    stabilized_colength(x.field(), x.n(), sigma.gens(), cap)
}

/// The section of `V(f)` by `V(h)` eliminated into the remaining n-1
/// variables: solves `h = 0` for `x_var` and substitutes into `f`. The result
/// is a level-`k` truncation.
pub fn section_equation<F: Field>(
    f: &TruncatedPoly<F>,
    h: &TruncatedPoly<F>,
    var: u32,
    k: u32,
) -> Result<TruncatedPoly<F>> {
    let g = implicit_solve(h, var, k)?;
    let s = f.substitute(var, &g)?;
    s.drop_variable(var)
}

fn section_invariant<F: Field>(
    f: &TruncatedPoly<F>,
    h: &TruncatedPoly<F>,
    var: u32,
    cap: u32,
    include_equation: bool,
) -> Result<StabilizedLength> {
    let field = f.field().clone();
    let n = f.n();
    // The section is only known modulo m^K; colengths at levels < K are
    // exact, so escalate K until the scan stabilizes or the cap is reached.
    let mut solve_level = (cap / 2).clamp(6, cap + 2);
    loop {
        let s = section_equation(f, h, var, solve_level)?;
        let avail = match s.trunc() {
            Trunc::Exact => u32::MAX,
            Trunc::Level(k) => k.saturating_sub(1),
        };
        let mut gens: Vec<TruncatedPoly<F>> = (0..n - 1).map(|v| s.derivative(v)).collect();
        if include_equation {
            gens.push(s.truncate(avail.min(solve_level)));
        }
        let reach = cap.min(avail);
        match scan_levels(&field, n - 1, &gens, reach)? {
            ScanOutcome::Finite(v) => return Ok(StabilizedLength::Finite(v)),
            ScanOutcome::NotByLevel { chi } => {
                if reach >= cap {
                    let profile = profile_from_chi(chi);
                    return Ok(StabilizedLength::Unbounded {
                        cap,
                        dim_estimate: profile.dim,
                    });
                }
                solve_level = (solve_level * 2).min(cap + 2);
            }
        }
    }
}

/// Milnor number of the hypersurface section `V(f) ∩ V(h)`, computed by
/// eliminating `x_var` with the implicit function theorem. Exact whenever it
/// stabilizes below the cap.
pub fn section_milnor<F: Field>(
    f: &TruncatedPoly<F>,
    h: &TruncatedPoly<F>,
    var: u32,
    cap: u32,
) -> Result<StabilizedLength> {
    section_invariant(f, h, var, cap, false)
}

/// Tjurina number of the eliminated section (equation plus its partials).
pub fn section_tjurina<F: Field>(
    f: &TruncatedPoly<F>,
    h: &TruncatedPoly<F>,
    var: u32,
    cap: u32,
) -> Result<StabilizedLength> {
    section_invariant(f, h, var, cap, true)
}

/// Hilbert-Samuel profile of a singular-locus scheme (convenience used by
/// reports).
pub fn sigma_profile<F: Field>(
    x: &SchemePresentation<F>,
    h: Option<&TruncatedPoly<F>>,
    alpha: u32,
    kmax: u32,
) -> Result<HsProfile> {
    let sigma = singular_scheme(x, h, alpha)?;
    crate::profile::hs_profile(&sigma, kmax)
}

/// Convenience: dimension of a scheme by Hilbert growth, requiring
/// stabilization.
pub fn stable_dimension<F: Field>(s: &SchemePresentation<F>, kmax_start: u32) -> Result<(u32, u64)> {
    let mut kmax = kmax_start.max(4);
    loop {
        let p = crate::profile::hs_profile(s, kmax)?;
        if p.status == ProfileStatus::Stabilized {
            return Ok((p.dim, p.mult));
        }
        if kmax >= 40 {
            return Err(Error::TruncationLimited(format!(
                "dimension of `{}` did not stabilize by level {kmax}",
                s.label()
            )));
        }
        kmax += kmax / 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q() -> Rationals {
        Rationals
    }

    fn var(n: u32, i: u32) -> TruncatedPoly<Rationals> {
        TruncatedPoly::variable(q(), n, i)
    }

    fn quadric3(field: Rationals) -> SchemePresentation<Rationals> {
        let x = TruncatedPoly::variable(field, 3, 0);
        let y = TruncatedPoly::variable(field, 3, 1);
        let z = TruncatedPoly::variable(field, 3, 2);
        let f = x
            .pow(2)
            .unwrap()
            .add(&y.pow(2).unwrap())
            .unwrap()
            .add(&z.pow(2).unwrap())
            .unwrap();
        SchemePresentation::new(field, 3, vec![f], "quadric cone").unwrap()
    }

    #[test]
    fn gradient_minors() {
        // gens {x^2+y^2+z^2}, alpha=2, n=3: 1x1 minors are the gradient
        let s = quadric3(q());
        let minors = jacobian_minor_ideal(&q(), 3, s.gens(), 2).unwrap();
        let expect: Vec<_> = (0..3).map(|i| var(3, i)).collect();
        assert_eq!(minors, expect); // monic normalization divides out the 2
    }

    #[test]
    fn two_by_two_minors_normalize() {
        // gens {z, x^2+y^2+z^2}, alpha=1, n=3 -> minors {x, y} after
        // normalization (the zero minor is dropped)
        let s = quadric3(q());
        let z = var(3, 2);
        let mut gens = vec![z];
        gens.extend_from_slice(s.gens());
        let minors = jacobian_minor_ideal(&q(), 3, &gens, 1).unwrap();
        assert_eq!(minors.len(), 2);
        assert!(minors.contains(&var(3, 0)));
        assert!(minors.contains(&var(3, 1)));
    }

    #[test]
    fn gradient_of_xy() {
        let x = var(2, 0);
        let y = var(2, 1);
        let f = x.mul(&y).unwrap();
        let minors = jacobian_minor_ideal(&q(), 2, &[f], 1).unwrap();
        assert!(minors.contains(&x));
        assert!(minors.contains(&y));
    }

    #[test]
    fn minor_size_clamps() {
        let x = var(2, 0);
        // one generator, 2x2 minors impossible -> zero ideal
        let minors = jacobian_minor_ideal(&q(), 2, &[x.clone()], 0).unwrap();
        assert!(minors.is_empty());
        // size 0 -> unit ideal
        let minors = jacobian_minor_ideal(&q(), 2, &[x], 2).unwrap();
        assert_eq!(minors.len(), 1);
        assert!(!minors[0].is_zero());
    }

    #[test]
    fn singular_scheme_of_sliced_quadric() {
        // X = V(x^2+y^2+z^2), h = z, alpha=1: the reduced origin, length 1
        let s = quadric3(q());
        let z = var(3, 2);
        let sigma = singular_scheme(&s, Some(&z), 1).unwrap();
        let len = stabilized_colength(&q(), 3, sigma.gens(), 12).unwrap();
        assert_eq!(len, StabilizedLength::Finite(1));
    }

    #[test]
    fn singular_scheme_line_over_fp() {
        // X = V(x^2+y^2+z^2), h = z - i*y: Sigma is a line (dim 1, mult 1)
        let f = PrimeField::new(10009).unwrap();
        let i = f.sqrt_minus_one().unwrap();
        let x = TruncatedPoly::variable(f, 3, 0);
        let y = TruncatedPoly::variable(f, 3, 1);
        let z = TruncatedPoly::variable(f, 3, 2);
        let quad = x
            .pow(2)
            .unwrap()
            .add(&y.pow(2).unwrap())
            .unwrap()
            .add(&z.pow(2).unwrap())
            .unwrap();
        let xs = SchemePresentation::new(f, 3, vec![quad], "quadric").unwrap();
        let h = z.sub(&y.scale(&i)).unwrap();
        let sigma = singular_scheme(&xs, Some(&h), 1).unwrap();
        let p = crate::profile::hs_profile(&sigma, 8).unwrap();
        assert_eq!((p.dim, p.mult), (1, 1));
        assert!(p.is_stabilized());
        // and tjurina is unbounded with dim estimate 1
        let tj = tjurina_number(&xs, Some(&h), 1, 10).unwrap();
        assert_eq!(
            tj,
            StabilizedLength::Unbounded {
                cap: 10,
                dim_estimate: 1
            }
        );
    }

    #[test]
    fn milnor_numbers() {
        // x^2+y^2+z^2 -> 1
        let s = quadric3(q());
        let mu = milnor_number(&s.gens()[0], 16).unwrap();
        assert_eq!(mu, StabilizedLength::Finite(1));

        // x^3+y^3 -> 4
        let x = var(2, 0);
        let y = var(2, 1);
        let f = x.pow(3).unwrap().add(&y.pow(3).unwrap()).unwrap();
        assert_eq!(milnor_number(&f, 16).unwrap(), StabilizedLength::Finite(4));

        // x^2 y -> unbounded, Jacobian scheme dim 1
        let f = x.pow(2).unwrap().mul(&y).unwrap();
        assert_eq!(
            milnor_number(&f, 12).unwrap(),
            StabilizedLength::Unbounded {
                cap: 12,
                dim_estimate: 1
            }
        );

        assert!(milnor_number(&TruncatedPoly::zero(q(), 2), 8).is_err());
    }

    #[test]
    fn tjurina_of_quadric_germ() {
        // hypersurface x^2+y^2+z^2 in 3 variables, alpha = 2 -> tau = 1
        let s = quadric3(q());
        let tau = tjurina_number(&s, None, 2, 12).unwrap();
        assert_eq!(tau, StabilizedLength::Finite(1));
    }

    #[test]
    fn section_milnor_basics() {
        // f = x^2+y^2+z^2, h = z: section is x^2+y^2, mu = 1
        let s = quadric3(q());
        let f = &s.gens()[0];
        let z = var(3, 2);
        assert_eq!(
            section_milnor(f, &z, 2, 16).unwrap(),
            StabilizedLength::Finite(1)
        );
    }

    #[test]
    fn section_milnor_nonisolated() {
        // f = x^2+y^2+z^2, h = z - i*y: section is x^2, non-isolated
        let fpf = PrimeField::new(10009).unwrap();
        let i = fpf.sqrt_minus_one().unwrap();
        let x = TruncatedPoly::variable(fpf, 3, 0);
        let y = TruncatedPoly::variable(fpf, 3, 1);
        let z = TruncatedPoly::variable(fpf, 3, 2);
        let f = x
            .pow(2)
            .unwrap()
            .add(&y.pow(2).unwrap())
            .unwrap()
            .add(&z.pow(2).unwrap())
            .unwrap();
        let h = z.sub(&y.scale(&i)).unwrap();
        let res = section_milnor(&f, &h, 2, 12).unwrap();
        assert!(matches!(res, StabilizedLength::Unbounded { .. }));
    }

    #[test]
    fn intro_section_equation() {
        // f = x1^2+x2^2+x3^2, h_j = x1 + i x2 + x2^j: the eliminated section
        // is 2i x2^{j+1} + x2^{2j} + x3^2 (sign of the x2^{2j} term comes out
        // of the substitution; it is a unit multiple of the usual display)
        let fpf = PrimeField::new(10009).unwrap();
        let i = fpf.sqrt_minus_one().unwrap();
        let n = 3u32;
        let x1 = TruncatedPoly::variable(fpf, n, 0);
        let x2 = TruncatedPoly::variable(fpf, n, 1);
        let x3 = TruncatedPoly::variable(fpf, n, 2);
        let f = x1
            .pow(2)
            .unwrap()
            .add(&x2.pow(2).unwrap())
            .unwrap()
            .add(&x3.pow(2).unwrap())
            .unwrap();
        let j = 3u32;
        let h = x1
            .add(&x2.scale(&i))
            .unwrap()
            .add(&x2.pow(j).unwrap())
            .unwrap();
        let s = section_equation(&f, &h, 0, 12).unwrap();
        let two_i = fpf.add(&i, &i);
        let y = TruncatedPoly::variable(fpf, n - 1, 0); // x2 after dropping x1
        let w = TruncatedPoly::variable(fpf, n - 1, 1); // x3
        let expect = y
            .pow(j + 1)
            .unwrap()
            .scale(&two_i)
            .add(&y.pow(2 * j).unwrap())
            .unwrap()
            .add(&w.pow(2).unwrap())
            .unwrap();
        assert_eq!(s, expect.truncate(12));
        // and its Milnor number is j
        assert_eq!(
            section_milnor(&f, &h, 0, 16).unwrap(),
            StabilizedLength::Finite(j as u64)
        );
    }
}
