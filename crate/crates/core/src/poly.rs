//! Sparse truncated multivariate polynomials: the working representatives of
//! elements of `A/m^k`.
//!
//! A value is either an exact polynomial or a truncation known modulo `m^k`;
//! the distinction is carried in [`Trunc`] and propagated through every
//! operation, so an answer is never silently less precise than it claims.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::field::Field;
use crate::monomial::Monomial;
use crate::Result;

/// Precision of a polynomial: exact, or known modulo `m^k`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Trunc {
    Exact,
    Level(u32),
}

impl Trunc {
    pub fn min(self, other: Trunc) -> Trunc {
        match (self, other) {
            (Trunc::Exact, t) | (t, Trunc::Exact) => t,
            (Trunc::Level(a), Trunc::Level(b)) => Trunc::Level(a.min(b)),
        }
    }

    /// Level as a number, with `u32::MAX` standing in for exactness.
    pub fn level_or_max(self) -> u32 {
        match self {
            Trunc::Exact => u32::MAX,
            Trunc::Level(k) => k,
        }
    }
}

/// Sparse polynomial with all terms of degree >= the truncation level
/// discarded. No zero coefficients are stored; the zero polynomial is the
/// empty term map.
#[derive(Clone, Debug)]
pub struct TruncatedPoly<F: Field> {
    field: F,
    n: u32,
    trunc: Trunc,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for TruncatedPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.terms == other.terms
    }
}
impl<F: Field> Eq for TruncatedPoly<F> {}

impl<F: Field> TruncatedPoly<F> {
    pub fn zero(field: F, n: u32) -> Self {
        TruncatedPoly {
            field,
            n,
            trunc: Trunc::Exact,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: F, n: u32, c: F::Elem) -> Self {
        let mut p = Self::zero(field, n);
        if !p.field.is_zero(&c) {
            p.terms.insert(Monomial::one(n), c);
        }
        p
    }

    pub fn one(field: F, n: u32) -> Self {
        let c = field.one();
        Self::constant(field, n, c)
    }

    pub fn variable(field: F, n: u32, i: u32) -> Self {
        let mut p = Self::zero(field.clone(), n);
        p.terms.insert(Monomial::var(n, i), field.one());
        p
    }

    pub fn monomial_term(field: F, n: u32, m: Monomial, c: F::Elem) -> Self {
        let mut p = Self::zero(field, n);
        if !p.field.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(field: F, n: u32, trunc: Trunc, it: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, F::Elem)>,
    {
        let mut p = TruncatedPoly {
            field,
            n,
            trunc,
            terms: BTreeMap::new(),
        };
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn trunc(&self) -> Trunc {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc == Trunc::Exact
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> F::Elem {
        self.coeff(&Monomial::one(self.n))
    }

    /// Minimal degree of a stored term; `None` is the +infinity sentinel of
    /// the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        // greatest key in the local order = lowest degree
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// Maximal degree of a stored term (total degree for exact polynomials).
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    /// Leading term with respect to the local order.
    pub fn leading(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        if let Trunc::Level(k) = self.trunc {
            if m.degree() >= k {
                return;
            }
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = self.field.add(&old, &c);
                if !self.field.is_zero(&s) {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    fn check_compat(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut out = TruncatedPoly {
            field: self.field.clone(),
            n: self.n,
            trunc,
            terms: BTreeMap::new(),
        };
        for (m, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            let mut z = Self::zero(self.field.clone(), self.n);
            z.trunc = self.trunc;
            return z;
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = self.field.mul(v, c);
        }
        out
    }

    /// Drop all terms of degree >= k; the result is only promised modulo
    /// m^k, regardless of how precise the input was.
    pub fn truncate(&self, k: u32) -> Self {
        let mut out = TruncatedPoly {
            field: self.field.clone(),
            n: self.n,
            trunc: Trunc::Level(k.min(self.trunc.level_or_max())),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            if m.degree() < k {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Product with all terms of degree >= k dropped. Requires
    /// `k <= min(p.k, q.k)` unless the inputs are exact.
    pub fn mul_trunc(&self, other: &Self, k: u32) -> Result<Self> {
        self.check_compat(other)?;
        for t in [self.trunc, other.trunc] {
            if let Trunc::Level(have) = t {
                if k > have {
                    return Err(Error::GeneratorTruncated {
                        requested: k,
                        available: have,
                    });
                }
            }
        }
        let mut out = TruncatedPoly {
            field: self.field.clone(),
            n: self.n,
            trunc: Trunc::Level(k),
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &self.terms {
            if ma.degree() >= k {
                continue;
            }
            for (mb, cb) in &other.terms {
                if ma.degree() + mb.degree() >= k {
                    continue;
                }
                out.add_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    /// Exact product of exact polynomials.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let trunc = self.trunc.min(other.trunc);
        if let Trunc::Level(k) = trunc {
            return self.mul_trunc(other, k);
        }
        let mut out = TruncatedPoly {
            field: self.field.clone(),
            n: self.n,
            trunc: Trunc::Exact,
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    /// Exact k-th power (truncated when the input is truncated).
    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.field.clone(), self.n);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Partial derivative. A level-k input is only known to level k-1 after
    /// differentiation.
    pub fn derivative(&self, var: u32) -> Self {
        let trunc = match self.trunc {
            Trunc::Exact => Trunc::Exact,
            Trunc::Level(k) => Trunc::Level(k.saturating_sub(1)),
        };
        let mut out = TruncatedPoly {
            field: self.field.clone(),
            n: self.n,
            trunc,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var as usize] -= 1;
            let factor = self.field.from_i64(e as i64);
            out.add_term(Monomial::new(exps), self.field.mul(c, &factor));
        }
        out
    }

    /// Substitute `x_var := g` where `g` has no constant term. For truncated
    /// operands the result is known modulo `m^min(k_self, k_g)`.
    pub fn substitute(&self, var: u32, g: &Self) -> Result<Self> {
        self.check_compat(g)?;
        if !g.field.is_zero(&g.constant_term()) {
            return Err(Error::NonzeroConstantTerm);
        }
        let trunc = self.trunc.min(g.trunc);
        // group by the exponent of x_var, then Horner
        let mut by_exp: BTreeMap<u16, TruncatedPoly<F>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let mut exps = m.exps().to_vec();
            exps[var as usize] = 0;
            let entry = by_exp
                .entry(e)
                .or_insert_with(|| Self::zero(self.field.clone(), self.n));
            entry.add_term(Monomial::new(exps), c.clone());
        }
        let mut acc = Self::zero(self.field.clone(), self.n);
        acc.trunc = trunc;
        let mut last_e = None;
        for (e, part) in by_exp.into_iter().rev() {
            let gap = match last_e {
                None => 0,
                Some(le) => le - e,
            };
            for _ in 0..gap {
                acc = acc.mul_any(g, trunc)?;
            }
            acc = acc.add(&part)?;
            acc.trunc = trunc;
            last_e = Some(e);
        }
        if let Some(e) = last_e {
            for _ in 0..e {
                acc = acc.mul_any(g, trunc)?;
            }
        }
        acc.trunc = trunc;
        Ok(acc)
    }

    fn mul_any(&self, other: &Self, trunc: Trunc) -> Result<Self> {
        match trunc {
            Trunc::Exact => self.mul(other),
            Trunc::Level(k) => self.mul_trunc(other, k),
        }
    }

    /// Apply the linear change of coordinates `x_i -> sum_j M[i][j] x_j`.
    /// `M` must be invertible; quotient-ring invariants are unchanged under
    /// such substitutions.
    pub fn linear_substitute(&self, m: &[Vec<F::Elem>]) -> Result<Self> {
        let n = self.n as usize;
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(Error::Usage(format!("substitution matrix must be {n}x{n}")));
        }
        if !is_invertible(&self.field, m) {
            return Err(Error::SingularMatrix);
        }
        let images: Vec<TruncatedPoly<F>> = (0..n)
            .map(|i| {
                Self::from_terms(
                    self.field.clone(),
                    self.n,
                    Trunc::Exact,
                    (0..n).map(|j| (Monomial::var(self.n, j as u32), m[i][j].clone())),
                )
            })
            .collect();
        let mut out = Self::zero(self.field.clone(), self.n);
        out.trunc = self.trunc;
        for (mono, c) in &self.terms {
            let mut term = Self::constant(self.field.clone(), self.n, c.clone());
            for (i, img) in images.iter().enumerate() {
                for _ in 0..mono.exp(i as u32) {
                    term = term.mul_any(img, self.trunc)?;
                }
            }
            out = out.add(&term)?;
            out.trunc = self.trunc;
        }
        Ok(out)
    }

    /// Remove an absent variable from the ambient ring, producing a
    /// polynomial in n-1 variables.
    pub fn drop_variable(&self, var: u32) -> Result<Self> {
        for m in self.terms.keys() {
            if m.exp(var) != 0 {
                return Err(Error::Usage(format!(
                    "variable {var} still occurs; cannot drop it"
                )));
            }
        }
        let mut out = TruncatedPoly {
            field: self.field.clone(),
            n: self.n - 1,
            trunc: self.trunc,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            out.terms.insert(m.drop_var(var), c.clone());
        }
        Ok(out)
    }

    /// Canonical display; the printer in [`crate::parse`] round-trips this.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        // descending local order: constants and low degrees first
        for (m, c) in self.terms.iter().rev() {
            let cs = self.field.fmt_elem(c);
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for i in 0..self.n {
                let e = m.exp(i);
                if e == 1 {
                    factors.push(names[i as usize].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", names[i as usize], e));
                }
            }
            if factors.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

/// Rank test by dense Gaussian elimination over the field.
pub fn is_invertible<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<F::Elem>> = m.to_vec();
    for col in 0..n {
        let Some(pr) = (col..n).find(|&r| !field.is_zero(&a[r][col])) else {
            return false;
        };
        a.swap(col, pr);
        let inv = field.inv(&a[col][col]).expect("nonzero pivot");
        for j in 0..n {
            a[col][j] = field.mul(&a[col][j], &inv);
        }
        for r in 0..n {
            if r != col && !field.is_zero(&a[r][col]) {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = field.mul(&f, &a[col][j]);
                    a[r][j] = field.sub(&a[r][j], &t);
                }
            }
        }
    }
    true
}

/// Solve `h = 0` for `x_var` by fixed-point iteration, to the stated level.
///
/// Requires `h(0) = 0` and a unit coefficient on `x_var`. The returned
/// substitution `g` lives in the remaining variables (still indexed in the
/// ambient ring) and satisfies `h(x_1, .., g, .., x_n) = 0 mod m^k`.
pub fn implicit_solve<F: Field>(
    h: &TruncatedPoly<F>,
    var: u32,
    k: u32,
) -> Result<TruncatedPoly<F>> {
    let field = h.field().clone();
    let n = h.n();
    if !field.is_zero(&h.constant_term()) {
        return Err(Error::NonzeroConstantTerm);
    }
    if let Trunc::Level(have) = h.trunc() {
        if have < k {
            return Err(Error::GeneratorTruncated {
                requested: k,
                available: have,
            });
        }
    }
    let u = h.coeff(&Monomial::var(n, var));
    let Some(u_inv) = field.inv(&u) else {
        return Err(Error::NotSolvable { var });
    };
    // h = u*x_var - w  =>  x_var = u^{-1} w(x, x_var)
    let w = TruncatedPoly::variable(field.clone(), n, var)
        .scale(&u)
        .sub(h)?
        .truncate(k);
    let mut phi = TruncatedPoly::zero(field.clone(), n);
    let mut phi_t = phi.truncate(k);
    for _ in 0..k {
        let next = w.substitute(var, &phi_t)?.scale(&u_inv).truncate(k);
        if next == phi_t {
            break;
        }
        phi = next;
        phi_t = phi.truncate(k);
    }
    debug_assert!(phi_t.terms.keys().all(|m| m.exp(var) == 0));
    Ok(phi_t)
}
