//! Monomials and the degree-then-reverse-lexicographic order used for
//! pivoting.
//!
//! Because the engine works in local rings, the order is *local*: monomials
//! of lower total degree compare greater, so `1 > x > y > x^2 > xy > y^2`.
//! Ties inside a degree are broken reverse-lexicographically. Pivoting on the
//! greatest monomial of each row then means pivoting on the lowest degree,
//! which is what makes colengths at every level `j <= k` readable from a
//! single level-`k` echelonization: a row whose pivot has degree >= j is
//! supported entirely in degree >= j and vanishes under truncation.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::Error;
use crate::Result;

/// Exponent vector of length `n`; the total order is a pure function of the
/// exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial { exps }
    }

    /// The constant monomial `1`.
    pub fn one(n: u32) -> Self {
        Monomial {
            exps: vec![0; n as usize],
        }
    }

    /// The variable `x_i`.
    pub fn var(n: u32, i: u32) -> Self {
        let mut exps = vec![0; n as usize];
        exps[i as usize] = 1;
        Monomial { exps }
    }

    pub fn n(&self) -> u32 {
        self.exps.len() as u32
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, i: u32) -> u16 {
        self.exps[i as usize]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Raise a single variable's exponent.
    pub fn times_var(&self, i: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i as usize] += 1;
        Monomial { exps }
    }

    /// Remove a variable (which must have exponent zero), shrinking the
    /// ambient dimension by one.
    pub fn drop_var(&self, i: u32) -> Monomial {
        debug_assert_eq!(self.exps[i as usize], 0);
        let mut exps = self.exps.clone();
        exps.remove(i as usize);
        Monomial { exps }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        match self.degree().cmp(&other.degree()) {
            Ordering::Less => Ordering::Greater,
            Ordering::Greater => Ordering::Less,
            Ordering::Equal => {
                // reverse-lexicographic tie break: the last differing
                // exponent decides, smaller exponent wins
                for i in (0..self.exps.len()).rev() {
                    match self.exps[i].cmp(&other.exps[i]) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {}
                    }
                }
                Ordering::Equal
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Indexed enumeration of all monomials of degree < k in n variables, sorted
/// descending (so index 0 is `1`, and indices within a degree are contiguous).
///
/// Columns of every echelonized truncation refer to indices in this table.
#[derive(Debug)]
pub struct MonomialTable {
    n: u32,
    level: u32,
    mons: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
    /// `deg_offset[d]` = number of monomials of degree < d; has `level + 1`
    /// entries.
    deg_offset: Vec<u32>,
}

impl MonomialTable {
    pub fn new(n: u32, level: u32) -> Self {
        let mut mons = Vec::new();
        let mut deg_offset = vec![0u32];
        for d in 0..level {
            let mut layer = Vec::new();
            enumerate_degree(n, d, &mut layer);
            // descending in the local order = grevlex-descending inside a degree
            layer.sort_by(|a, b| b.cmp(a));
            debug_assert!(layer.windows(2).all(|w| w[0] > w[1]));
            mons.extend(layer);
            deg_offset.push(mons.len() as u32);
        }
        let index = mons
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        MonomialTable {
            n,
            level,
            mons,
            index,
            deg_offset,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.mons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mons.is_empty()
    }

    pub fn monomial(&self, idx: u32) -> &Monomial {
        &self.mons[idx as usize]
    }

    /// Index of a monomial of degree < level.
    pub fn index_of(&self, m: &Monomial) -> Option<u32> {
        self.index.get(m).copied()
    }

    /// Number of monomials of degree < d (requires d <= level).
    pub fn count_below(&self, d: u32) -> Result<u32> {
        if d > self.level {
            return Err(Error::InsufficientTruncation {
                requested: d,
                available: self.level,
            });
        }
        Ok(self.deg_offset[d as usize])
    }

    /// Monomials of the given degree, in descending order.
    pub fn degree_slice(&self, d: u32) -> &[Monomial] {
        let lo = self.deg_offset[d as usize] as usize;
        let hi = self.deg_offset[d as usize + 1] as usize;
        &self.mons[lo..hi]
    }

    /// All monomials of degree <= d, descending (for multiplier enumeration).
    pub fn up_to_degree(&self, d: u32) -> &[Monomial] {
        let hi = self.deg_offset[(d + 1).min(self.level) as usize] as usize;
        &self.mons[..hi]
    }
}

fn enumerate_degree(n: u32, d: u32, out: &mut Vec<Monomial>) {
    fn rec(exps: &mut Vec<u16>, pos: usize, rem: u32, out: &mut Vec<Monomial>) {
        if pos + 1 == exps.len() {
            exps[pos] = rem as u16;
            out.push(Monomial::new(exps.clone()));
            return;
        }
        for e in (0..=rem).rev() {
            exps[pos] = e as u16;
            rec(exps, pos + 1, rem - e, out);
        }
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::new(vec![]));
        }
        return;
    }
    let mut exps = vec![0u16; n as usize];
    rec(&mut exps, 0, d, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u16]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn local_order_fixture() {
        // 1 > x > y > x^2 > xy > y^2
        let one = m(&[0, 0]);
        let x = m(&[1, 0]);
        let y = m(&[0, 1]);
        let x2 = m(&[2, 0]);
        let xy = m(&[1, 1]);
        let y2 = m(&[0, 2]);
        let mut v = vec![y2.clone(), xy.clone(), x2.clone(), y.clone(), x.clone(), one.clone()];
        v.sort_by(|a, b| b.cmp(a));
        assert_eq!(v, vec![one, x, y, x2, xy, y2]);
    }

    #[test]
    fn table_indices_and_offsets() {
        let t = MonomialTable::new(2, 3);
        assert_eq!(t.len(), 6);
        assert_eq!(t.index_of(&m(&[0, 0])), Some(0));
        assert_eq!(t.index_of(&m(&[1, 0])), Some(1));
        assert_eq!(t.index_of(&m(&[0, 1])), Some(2));
        assert_eq!(t.index_of(&m(&[2, 0])), Some(3));
        assert_eq!(t.index_of(&m(&[1, 1])), Some(4));
        assert_eq!(t.index_of(&m(&[0, 2])), Some(5));
        assert_eq!(t.count_below(1).unwrap(), 1);
        assert_eq!(t.count_below(2).unwrap(), 3);
        assert_eq!(t.count_below(3).unwrap(), 6);
        assert!(t.count_below(4).is_err());
    }

    #[test]
    fn table_size_matches_binomial() {
        // #monomials of degree < k in n vars = C(n+k-1, n)
        let t = MonomialTable::new(3, 5);
        assert_eq!(t.len(), 35); // C(7,3)
        let t = MonomialTable::new(4, 4);
        assert_eq!(t.len(), 35); // C(7,4)
    }

    #[test]
    fn degree_and_division() {
        let a = m(&[2, 1]);
        let b = m(&[1, 0]);
        assert_eq!(a.degree(), 3);
        assert!(b.divides(&a));
        assert!(!a.divides(&b));
        assert_eq!(b.mul(&b), m(&[2, 0]));
    }
}
