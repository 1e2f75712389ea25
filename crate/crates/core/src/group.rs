//! Finite groups given by Cayley table.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    id: usize,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Structural construction from a Cayley table. The identity and
    /// inverses are located if they exist; the group axioms are checked by
    /// [`validate`](Self::validate).
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let g = table.len();
        if g == 0 {
            return Err(Error::shape("group table is empty"));
        }
        let mut flat = Vec::with_capacity(g * g);
        for (i, row) in table.iter().enumerate() {
            if row.len() != g {
                return Err(Error::shape(format!("table row {i} has length {}, expected {g}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= g) {
                return Err(Error::shape(format!("table row {i} has entry {bad} out of range")));
            }
            flat.extend_from_slice(row);
        }
        let id = (0..g).find(|&e| (0..g).all(|x| flat[e * g + x] == x && flat[x * g + e] == x)).unwrap_or(0);
        let inv =
            (0..g).map(|x| (0..g).find(|&y| flat[x * g + y] == id && flat[y * g + x] == id).unwrap_or(id)).collect();
        Ok(Self { order: g, table: flat, id, inv })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` with generator index 1 and `i * j = i + j mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_table(&table).expect("cyclic table is well formed")
    }

    /// Product group, with `(a, b)` indexed `a * |H| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let (g, h) = (self.order, other.order);
        let table: Vec<Vec<usize>> = (0..g * h)
            .map(|x| (0..g * h).map(|y| self.mul(x / h, y / h) * h + other.mul(x % h, y % h)).collect())
            .collect();
        Self::from_table(&table).expect("product table is well formed")
    }

    pub fn klein_four() -> Self {
        Self::cyclic(2).direct_product(&Self::cyclic(2))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.id
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|i| self.table[i * self.order..(i + 1) * self.order].to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// All subgroups, each as a sorted list of element indices.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        assert!(self.order <= 16, "subgroup enumeration is exhaustive over subsets");
        let mut out = Vec::new();
        for mask in 0u32..(1 << self.order) {
            if mask & (1 << self.id) == 0 {
                continue;
            }
            let members: Vec<usize> = self.elements().filter(|&x| mask & (1 << x) != 0).collect();
            let closed = members.iter().all(|&a| members.iter().all(|&b| mask & (1 << self.mul(a, b)) != 0));
            if closed {
                out.push(members);
            }
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let g = self.order;
        for x in 0..g {
            let ok = self.mul(self.id, x) == x && self.mul(x, self.id) == x;
            rep.check(ok, "identity", [x]);
        }
        for x in 0..g {
            let y = self.inv[x];
            let ok = self.mul(x, y) == self.id && self.mul(y, x) == self.id;
            rep.check(ok, "inverse", [x]);
        }
        for a in 0..g {
            for b in 0..g {
                let ab = self.mul(a, b);
                for c in 0..g {
                    rep.check(self.mul(ab, c) == self.mul(a, self.mul(b, c)), "associativity", [a, b, c]);
                }
            }
        }
        rep
    }
}

pub fn validate_group(grp: &FiniteGroup) -> ValidationReport {
    grp.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups_validate() {
        assert!(validate_group(&FiniteGroup::cyclic(3)).is_ok());
        assert!(validate_group(&FiniteGroup::cyclic(2)).is_ok());
        assert!(validate_group(&FiniteGroup::klein_four()).is_ok());
        assert!(FiniteGroup::klein_four().elements().all(|x| FiniteGroup::klein_four().inv(x) == x));
    }

    #[test]
    fn transposed_entry_breaks_associativity() {
        let mut t = FiniteGroup::cyclic(3).table();
        t[1].swap(1, 2);
        let g = FiniteGroup::from_table(&t).unwrap();
        let rep = validate_group(&g);
        let w = &rep.first("associativity").expect("associativity witness").witness;
        assert_eq!(w.len(), 3);
        let (a, b, c) = (w[0], w[1], w[2]);
        assert_ne!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
    }

    #[test]
    fn shape_errors() {
        assert!(FiniteGroup::from_table(&[vec![0, 1]]).is_err());
        assert!(FiniteGroup::from_table(&[vec![0, 2], vec![1, 0]]).is_err());
        assert!(FiniteGroup::from_table(&[]).is_err());
    }

    #[test]
    fn subgroups_of_small_groups() {
        assert_eq!(FiniteGroup::cyclic(3).subgroups().len(), 2);
        assert_eq!(FiniteGroup::cyclic(4).subgroups().len(), 3);
        assert_eq!(FiniteGroup::klein_four().subgroups().len(), 5);
    }
}
