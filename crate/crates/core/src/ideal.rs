//! Echelonized vector-space bases of ideal truncations `(I + m^k)/m^k`.
//!
//! `span_ideal` materializes the image of an ideal in `A/m^k` by inserting
//! every monomial multiple of every generator into a reduced row echelon
//! structure. Pivots are the greatest monomials of their rows in the local
//! order (lowest degree first), so a row whose pivot has degree >= j is
//! supported entirely in degree >= j. That gives the colength formula at
//! every intermediate level from one elimination:
//!
//! `lambda(A/(I + m^j)) = #monomials of degree < j  -  #pivots of degree < j`
//!
//! Reduced row echelon form is canonical for a given span, so the rows are a
//! deterministic function of the generators, independent of insertion order.

use std::sync::Arc;

use crate::error::Error;
use crate::field::Field;
use crate::monomial::{Monomial, MonomialTable};
use crate::poly::{Trunc, TruncatedPoly};
use crate::Result;

/// Sparse row over table columns, sorted ascending by column; the first entry
/// is the pivot and is kept monic.
type SparseRow<E> = Vec<(u32, E)>;

/// Reduced echelon basis of `(I + m^k)/m^k`.
pub struct IdealTruncation<F: Field> {
    field: F,
    n: u32,
    level: u32,
    table: Arc<MonomialTable>,
    rows: Vec<SparseRow<F::Elem>>,
    /// Pivot columns, strictly increasing (pivot monomials strictly
    /// decreasing along rows).
    pivots: Vec<u32>,
}

impl<F: Field> IdealTruncation<F> {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn table(&self) -> &MonomialTable {
        &self.table
    }

    pub fn pivot_monomials(&self) -> Vec<Monomial> {
        self.pivots
            .iter()
            .map(|&c| self.table.monomial(c).clone())
            .collect()
    }

    /// `lambda(A/(I + m^j))` for any `j <= level`; exact.
    pub fn colength(&self, j: u32) -> Result<u64> {
        if j > self.level {
            return Err(Error::InsufficientTruncation {
                requested: j,
                available: self.level,
            });
        }
        let limit = self.table.count_below(j)?;
        let pivots_below = self.pivots.partition_point(|&c| c < limit);
        Ok(limit as u64 - pivots_below as u64)
    }

    /// All colengths `lambda(A/(I + m^{j+1}))`, j = 0 .. level-1.
    pub fn chi(&self) -> Vec<u64> {
        (1..=self.level)
            .map(|j| self.colength(j).expect("j <= level"))
            .collect()
    }

    /// Normal form of a polynomial against the basis (zero iff the class of
    /// `p` lies in the span).
    pub fn reduce(&self, p: &TruncatedPoly<F>) -> Result<TruncatedPoly<F>> {
        if p.n() != self.n {
            return Err(Error::AmbientMismatch(p.n(), self.n));
        }
        let mut row = self.to_row(p);
        self.reduce_row(&mut row);
        Ok(self.from_row(&row))
    }

    fn to_row(&self, p: &TruncatedPoly<F>) -> SparseRow<F::Elem> {
        let mut row: SparseRow<F::Elem> = p
            .terms()
            .filter(|(m, _)| m.degree() < self.level)
            .map(|(m, c)| (self.table.index_of(m).expect("degree < level"), c.clone()))
            .collect();
        row.sort_by_key(|&(c, _)| c);
        row
    }

    fn from_row(&self, row: &SparseRow<F::Elem>) -> TruncatedPoly<F> {
        TruncatedPoly::from_terms(
            self.field.clone(),
            self.n,
            Trunc::Level(self.level),
            row.iter()
                .map(|(c, v)| (self.table.monomial(*c).clone(), v.clone())),
        )
    }

    fn reduce_row(&self, row: &mut SparseRow<F::Elem>) {
        loop {
            let Some(&(col, ref coeff)) = row.first() else {
                return;
            };
            match self.pivots.binary_search(&col) {
                Err(_) => return,
                Ok(idx) => {
                    let factor = coeff.clone();
                    *row = row_sub_scaled(&self.field, row, &self.rows[idx], &factor);
                }
            }
        }
    }

    /// Insert a row, reducing it against the basis; returns true when the
    /// rank grew. The basis is kept in (non-reduced) echelon form; call
    /// `back_substitute` to finish.
    fn insert(&mut self, mut row: SparseRow<F::Elem>) -> bool {
        loop {
            let Some(&(col, ref coeff)) = row.first() else {
                return false;
            };
            match self.pivots.binary_search(&col) {
                Ok(idx) => {
                    let factor = coeff.clone();
                    row = row_sub_scaled(&self.field, &row, &self.rows[idx], &factor);
                }
                Err(pos) => {
                    let inv = self.field.inv(coeff).expect("nonzero leading coefficient");
                    for (_, v) in row.iter_mut() {
                        *v = self.field.mul(v, &inv);
                    }
                    self.pivots.insert(pos, col);
                    self.rows.insert(pos, row);
                    return true;
                }
            }
        }
    }

    /// Full back substitution: eliminate every pivot column from every other
    /// row, producing the canonical reduced echelon form.
    fn back_substitute(&mut self) {
        for i in (0..self.rows.len()).rev() {
            let mut row = std::mem::take(&mut self.rows[i]);
            loop {
                // find an entry beyond the pivot that hits a later pivot column
                let mut hit = None;
                for &(col, ref coeff) in row.iter().skip(1) {
                    if let Ok(j) = self.pivots.binary_search(&col) {
                        hit = Some((j, coeff.clone()));
                        break;
                    }
                }
                match hit {
                    None => break,
                    Some((j, factor)) => {
                        row = row_sub_scaled(&self.field, &row, &self.rows[j], &factor);
                    }
                }
            }
            self.rows[i] = row;
        }
    }

    /// The echelon rows as truncated polynomials (pivot-leading, monic).
    pub fn row_polys(&self) -> Vec<TruncatedPoly<F>> {
        self.rows.iter().map(|r| self.from_row(r)).collect()
    }

    /// Closure check: multiplying any row by any variable and reducing
    /// against the basis must yield zero below the level.
    pub fn is_closed(&self) -> bool {
        for poly in self.row_polys() {
            for v in 0..self.n {
                let xv = TruncatedPoly::variable(self.field.clone(), self.n, v);
                let shifted = poly
                    .mul_trunc(&xv, self.level)
                    .expect("compatible operands");
                let rem = self.reduce(&shifted).expect("same ambient");
                if !rem.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

fn row_sub_scaled<F: Field>(
    field: &F,
    a: &SparseRow<F::Elem>,
    b: &SparseRow<F::Elem>,
    factor: &F::Elem,
) -> SparseRow<F::Elem> {
    // a - factor * b, merging sorted sparse vectors
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = 0;
    let mut ib = 0;
    while ia < a.len() || ib < b.len() {
        let pick_a = match (a.get(ia), b.get(ib)) {
            (Some(&(ca, _)), Some(&(cb, _))) => {
                if ca == cb {
                    let v = field.sub(&a[ia].1, &field.mul(factor, &b[ib].1));
                    if !field.is_zero(&v) {
                        out.push((ca, v));
                    }
                    ia += 1;
                    ib += 1;
                    continue;
                }
                ca < cb
            }
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => break,
        };
        if pick_a {
            out.push(a[ia].clone());
            ia += 1;
        } else {
            let v = field.neg(&field.mul(factor, &b[ib].1));
            if !field.is_zero(&v) {
                out.push((b[ib].0, v));
            }
            ib += 1;
        }
    }
    out
}

/// Span of `{x^a g_i mod m^k : deg(x^a g_i) < k}`, which equals the image of
/// the generated ideal in `A/m^k`: power-series coefficients of degree >= k
/// cannot contribute below degree k. Every generator must be known at least
/// to degree < k. Empty generator lists are allowed (the zero ideal).
pub fn span_ideal<F: Field>(
    field: &F,
    n: u32,
    gens: &[TruncatedPoly<F>],
    k: u32,
) -> Result<IdealTruncation<F>> {
    span_ideal_with_table(field, n, gens, k, Arc::new(MonomialTable::new(n, k)))
}

/// `span_ideal` reusing an existing monomial table for the same `(n, k)`.
pub fn span_ideal_with_table<F: Field>(
    field: &F,
    n: u32,
    gens: &[TruncatedPoly<F>],
    k: u32,
    table: Arc<MonomialTable>,
) -> Result<IdealTruncation<F>> {
    assert_eq!(table.n(), n);
    assert_eq!(table.level(), k);
    let mut t = IdealTruncation {
        field: field.clone(),
        n,
        level: k,
        table,
        rows: Vec::new(),
        pivots: Vec::new(),
    };
    for g in gens {
        if g.n() != n {
            return Err(Error::AmbientMismatch(g.n(), n));
        }
        if g.field() != field {
            return Err(Error::FieldMismatch);
        }
        if let Trunc::Level(have) = g.trunc() {
            if have < k {
                return Err(Error::GeneratorTruncated {
                    requested: k,
                    available: have,
                });
            }
        }
        let Some(ord) = g.order() else {
            continue; // zero generator
        };
        if ord >= k {
            continue;
        }
        let gk = g.truncate(k);
        // all monomial multipliers with deg(m) + ord < k, in table order
        let multipliers: Vec<Monomial> = t.table.up_to_degree(k - 1 - ord).to_vec();
        for m in multipliers {
            let shifted: Vec<(u32, F::Elem)> = {
                let mut row: Vec<(u32, F::Elem)> = gk
                    .terms()
                    .filter(|(mm, _)| mm.degree() + m.degree() < k)
                    .map(|(mm, c)| {
                        let idx = t
                            .table
                            .index_of(&mm.mul(&m))
                            .expect("product below level");
                        (idx, c.clone())
                    })
                    .collect();
                row.sort_by_key(|&(c, _)| c);
                row
            };
            if !shifted.is_empty() {
                t.insert(shifted);
            }
        }
    }
    t.back_substitute();
    Ok(t)
}
