//! Finite-dimensional associative unital algebras over `F_p`, given by
//! structure constants, together with subalgebras and finite modules.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::linalg::{Matrix, Subspace};
use crate::report::ValidationReport;

/// Coefficient vector of an algebra element with respect to the basis of
/// its owning algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraElement(Vec<u64>);

impl AlgebraElement {
    pub(crate) fn from_vec(v: Vec<u64>) -> Self {
        Self(v)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl Deref for AlgebraElement {
    type Target = [u64];
    fn deref(&self) -> &[u64] {
        &self.0
    }
}

/// `b_i b_j = sum_k c[i][j][k] b_k`, with an explicit unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteAlgebra {
    field: Fp,
    n: usize,
    sc: Vec<u64>,
    unit: Vec<u64>,
}

impl FiniteAlgebra {
    /// Structural construction; the axioms are checked by [`validate`](Self::validate).
    pub fn new(p: u64, structure_constants: &[Vec<Vec<u64>>], unit: &[u64]) -> Result<Self> {
        let field = Fp::new(p).ok_or(Error::NotPrime(p))?;
        let n = unit.len();
        if n == 0 {
            return Err(Error::shape("algebra dimension must be at least 1"));
        }
        if structure_constants.len() != n {
            return Err(Error::shape(format!(
                "structure constants have {} outer entries, expected {n}",
                structure_constants.len()
            )));
        }
        let mut sc = Vec::with_capacity(n * n * n);
        for (i, row) in structure_constants.iter().enumerate() {
            if row.len() != n {
                return Err(Error::shape(format!("structure constants [{i}] has length {}", row.len())));
            }
            for (j, prod) in row.iter().enumerate() {
                if prod.len() != n {
                    return Err(Error::shape(format!("structure constants [{i}][{j}] has length {}", prod.len())));
                }
                sc.extend(prod.iter().map(|&c| field.reduce(c)));
            }
        }
        let unit: Vec<u64> = unit.iter().map(|&c| field.reduce(c)).collect();
        if unit.iter().all(|&c| c == 0) {
            return Err(Error::ZeroAlgebra);
        }
        Ok(Self { field, n, sc, unit })
    }

    /// Builds an algebra from a product rule on basis elements.
    pub fn from_fn(field: Fp, n: usize, unit: Vec<u64>, mut product: impl FnMut(usize, usize) -> Vec<u64>) -> Self {
        assert_eq!(unit.len(), n);
        let mut sc = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                let v = product(i, j);
                assert_eq!(v.len(), n);
                sc.extend(v);
            }
        }
        Self { field, n, sc, unit }
    }

    /// `F_p` itself.
    pub fn prime_field(field: Fp) -> Self {
        Self::split_semisimple(field, 1)
    }

    /// `F_p^m` with componentwise product.
    pub fn split_semisimple(field: Fp, m: usize) -> Self {
        Self::from_fn(field, m, vec![1; m], |i, j| {
            let mut v = vec![0; m];
            if i == j {
                v[i] = 1;
            }
            v
        })
    }

    /// The `k x k` matrix algebra on matrix units `E_{rs}` indexed `r * k + s`.
    pub fn matrix_algebra(field: Fp, k: usize) -> Self {
        let n = k * k;
        let mut unit = vec![0; n];
        for r in 0..k {
            unit[r * k + r] = 1;
        }
        Self::from_fn(field, n, unit, |i, j| {
            let (a, b) = (i / k, i % k);
            let (c, d) = (j / k, j % k);
            let mut v = vec![0; n];
            if b == c {
                v[a * k + d] = 1;
            }
            v
        })
    }

    pub fn direct_product(&self, other: &FiniteAlgebra) -> Self {
        assert_eq!(self.field, other.field);
        let (n1, n2) = (self.n, other.n);
        let mut unit = self.unit.clone();
        unit.extend_from_slice(&other.unit);
        Self::from_fn(self.field, n1 + n2, unit, |i, j| {
            let mut v = vec![0; n1 + n2];
            if i < n1 && j < n1 {
                v[..n1].copy_from_slice(&self.basis_product(i, j));
            } else if i >= n1 && j >= n1 {
                v[n1..].copy_from_slice(&other.basis_product(i - n1, j - n1));
            }
            v
        })
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.field.modulus()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn sc(&self, i: usize, j: usize, k: usize) -> u64 {
        self.sc[(i * self.n + j) * self.n + k]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<u64> {
        let s = (i * self.n + j) * self.n;
        self.sc[s..s + self.n].to_vec()
    }

    /// Structure constants as a nested `c[i][j][k]` array.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<u64>>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.basis_product(i, j)).collect()).collect()
    }

    pub fn unit(&self) -> AlgebraElement {
        AlgebraElement(self.unit.clone())
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement(vec![0; self.n])
    }

    pub fn basis(&self, i: usize) -> AlgebraElement {
        let mut v = vec![0; self.n];
        v[i] = 1;
        AlgebraElement(v)
    }

    pub fn basis_elements(&self) -> Vec<AlgebraElement> {
        (0..self.n).map(|i| self.basis(i)).collect()
    }

    /// Checked element construction; entries are reduced mod p.
    pub fn element(&self, coeffs: &[u64]) -> Result<AlgebraElement> {
        if coeffs.len() != self.n {
            return Err(Error::shape(format!(
                "element has {} coefficients, algebra has dimension {}",
                coeffs.len(),
                self.n
            )));
        }
        Ok(AlgebraElement(coeffs.iter().map(|&c| self.field.reduce(c)).collect()))
    }

    pub fn try_mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        if x.len() != self.n || y.len() != self.n {
            return Err(Error::shape(format!(
                "operands of length {} and {} in an algebra of dimension {}",
                x.len(),
                y.len(),
                self.n
            )));
        }
        Ok(self.mul(x, y))
    }

    /// Bilinear extension of the structure constants.
    pub fn mul(&self, x: &[u64], y: &[u64]) -> AlgebraElement {
        assert_eq!(x.len(), self.n, "left operand length");
        assert_eq!(y.len(), self.n, "right operand length");
        let f = self.field;
        let mut out = vec![0; self.n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = f.mul(xi, yj);
                let s = (i * self.n + j) * self.n;
                for (o, &k) in out.iter_mut().zip(&self.sc[s..s + self.n]) {
                    if k != 0 {
                        *o = f.add(*o, f.mul(c, k));
                    }
                }
            }
        }
        AlgebraElement(out)
    }

    /// Product of several elements, left to right.
    pub fn mul_all(&self, factors: &[&[u64]]) -> AlgebraElement {
        let mut acc = self.unit();
        for x in factors {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> AlgebraElement {
        let f = self.field;
        AlgebraElement(x.iter().zip(y).map(|(&a, &b)| f.add(a, b)).collect())
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> AlgebraElement {
        let f = self.field;
        AlgebraElement(x.iter().zip(y).map(|(&a, &b)| f.sub(a, b)).collect())
    }

    pub fn scale(&self, s: u64, x: &[u64]) -> AlgebraElement {
        let f = self.field;
        AlgebraElement(x.iter().map(|&a| f.mul(s, a)).collect())
    }

    pub fn sum<'a>(&self, xs: impl IntoIterator<Item = &'a [u64]>) -> AlgebraElement {
        let mut acc = self.zero();
        for x in xs {
            acc = self.add(&acc, x);
        }
        acc
    }

    /// Matrix of `y -> x y`.
    pub fn left_mul_matrix(&self, x: &[u64]) -> Matrix {
        let cols: Vec<Vec<u64>> = (0..self.n).map(|j| self.mul(x, &self.basis(j)).into_vec()).collect();
        Matrix::from_columns(self.field, self.n, &cols)
    }

    /// Matrix of `y -> y x`.
    pub fn right_mul_matrix(&self, x: &[u64]) -> Matrix {
        let cols: Vec<Vec<u64>> = (0..self.n).map(|j| self.mul(&self.basis(j), x).into_vec()).collect();
        Matrix::from_columns(self.field, self.n, &cols)
    }

    pub fn apply(&self, m: &Matrix, x: &[u64]) -> AlgebraElement {
        AlgebraElement(m.mul_vec(x))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// `e^2 = e` and `e` commutes with every basis element.
    pub fn is_central_idempotent(&self, e: &[u64]) -> bool {
        if self.mul(e, e).coeffs() != e {
            return false;
        }
        (0..self.n).all(|i| {
            let b = self.basis(i);
            self.mul(e, &b) == self.mul(&b, e)
        })
    }

    /// The two-sided ideal `A e` for a central idempotent `e`, as a subspace.
    pub fn ideal(&self, e: &[u64]) -> Subspace {
        Subspace::span(&self.right_mul_matrix(e).transpose())
    }

    /// Unit law and associativity on basis elements.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        if self.unit.iter().all(|&c| c == 0) {
            rep.fail("nonzero_unit", []);
        }
        // Left unit law over all j first, then the right one.
        for j in 0..self.n {
            let b = self.basis(j);
            rep.check(self.mul(&self.unit, &b) == b, "unit_law", [j]);
        }
        for j in 0..self.n {
            let b = self.basis(j);
            rep.check(self.mul(&b, &self.unit) == b, "unit_law", [j]);
        }
        let basis = self.basis_elements();
        for i in 0..self.n {
            for j in 0..self.n {
                let ij = self.mul(&basis[i], &basis[j]);
                for k in 0..self.n {
                    let jk = self.mul(&basis[j], &basis[k]);
                    let ok = self.mul(&ij, &basis[k]) == self.mul(&basis[i], &jk);
                    rep.check(ok, "associativity", [i, j, k]);
                }
            }
        }
        rep
    }
}

/// Free-standing form of [`FiniteAlgebra::validate`].
pub fn validate_algebra(alg: &FiniteAlgebra) -> ValidationReport {
    alg.validate()
}

pub fn multiply(alg: &FiniteAlgebra, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    alg.try_mul(x, y)
}

pub fn is_central_idempotent(alg: &FiniteAlgebra, e: &AlgebraElement) -> bool {
    alg.is_central_idempotent(e)
}

/// A unital subalgebra, stored by a canonical (row-reduced) basis of
/// ambient coefficient vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subalgebra {
    space: Subspace,
}

impl Subalgebra {
    /// Accepts a user-supplied basis: rows must be linearly independent,
    /// span the unit, and be closed under multiplication.
    pub fn from_basis(alg: &FiniteAlgebra, basis: &Matrix) -> Result<Self> {
        if basis.cols() != alg.dim() {
            return Err(Error::shape(format!(
                "subring basis has {} columns, algebra has dimension {}",
                basis.cols(),
                alg.dim()
            )));
        }
        let mut rep = ValidationReport::new();
        if basis.rank() != basis.rows() {
            rep.fail("linear_independence", [basis.rows()]);
        }
        let sub = Self { space: Subspace::span(basis) };
        rep.merge(sub.validate(alg));
        if rep.is_ok() {
            Ok(sub)
        } else {
            Err(Error::Invalid { what: "subring", report: rep })
        }
    }

    /// Span of arbitrary generators, validated for unit and closure.
    pub fn from_span(alg: &FiniteAlgebra, generators: &Matrix) -> Result<Self> {
        let sub = Self { space: Subspace::span(generators) };
        let rep = sub.validate(alg);
        if rep.is_ok() {
            Ok(sub)
        } else {
            Err(Error::Invalid { what: "subring", report: rep })
        }
    }

    pub fn whole(alg: &FiniteAlgebra) -> Self {
        Self { space: Subspace::whole(alg.field(), alg.dim()) }
    }

    /// `F_p * 1`.
    pub fn scalars(alg: &FiniteAlgebra) -> Self {
        Self { space: Subspace::span_of(alg.field(), alg.dim(), &[alg.unit().into_vec()]) }
    }

    pub fn validate(&self, alg: &FiniteAlgebra) -> ValidationReport {
        let mut rep = ValidationReport::new();
        rep.check(self.space.contains(&alg.unit()), "contains_unit", []);
        let rows = self.space.basis_vectors();
        for (i, x) in rows.iter().enumerate() {
            for (j, y) in rows.iter().enumerate() {
                rep.check(self.space.contains(&alg.mul(x, y)), "multiplicative_closure", [i, j]);
            }
        }
        rep
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn basis_elements(&self) -> Vec<AlgebraElement> {
        self.space.basis_vectors().into_iter().map(AlgebraElement).collect()
    }

    pub fn basis_matrix(&self) -> &Matrix {
        self.space.basis()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.space.contains(x)
    }

    /// The subalgebra as an algebra in its own right, on its canonical basis.
    pub fn as_algebra(&self, alg: &FiniteAlgebra) -> FiniteAlgebra {
        let rows = self.space.basis_vectors();
        let unit = self.space.coordinates(&alg.unit()).expect("subalgebra contains the unit");
        FiniteAlgebra::from_fn(alg.field(), rows.len(), unit, |i, j| {
            self.space.coordinates(&alg.mul(&rows[i], &rows[j])).expect("subalgebra is multiplicatively closed")
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A finite-dimensional module over some algebra. `act[i]` is the matrix of
/// the action of the i-th basis element of the acting algebra, applied to
/// column vectors of module coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleRep {
    pub dim: usize,
    pub side: Side,
    pub act: Vec<Matrix>,
}

impl ModuleRep {
    pub fn new(dim: usize, side: Side, act: Vec<Matrix>) -> Result<Self> {
        for (i, m) in act.iter().enumerate() {
            if m.shape() != (dim, dim) {
                return Err(Error::shape(format!(
                    "action matrix {i} is {}x{}, module dimension is {dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Self { dim, side, act })
    }

    /// `A` acting on itself by right multiplication.
    pub fn regular_right(alg: &FiniteAlgebra) -> Self {
        let act = (0..alg.dim()).map(|i| alg.right_mul_matrix(&alg.basis(i))).collect();
        Self { dim: alg.dim(), side: Side::Right, act }
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular_left(alg: &FiniteAlgebra) -> Self {
        let act = (0..alg.dim()).map(|i| alg.left_mul_matrix(&alg.basis(i))).collect();
        Self { dim: alg.dim(), side: Side::Left, act }
    }

    /// Matrix of the action of an arbitrary element of the acting algebra.
    pub fn action(&self, field: Fp, a: &[u64]) -> Matrix {
        assert_eq!(a.len(), self.act.len());
        let mut m = Matrix::zeros(field, self.dim, self.dim);
        for (c, act) in a.iter().zip(&self.act) {
            if *c != 0 {
                m = m.add(&act.scale(*c));
            }
        }
        m
    }

    /// Restriction of scalars along the inclusion of a subalgebra: the
    /// k-th basis element of `sub` acts as it does inside the ambient algebra.
    pub fn restrict(&self, alg: &FiniteAlgebra, sub: &Subalgebra) -> Self {
        let act = sub.basis_elements().iter().map(|b| self.action(alg.field(), b)).collect();
        Self { dim: self.dim, side: self.side, act }
    }

    pub fn direct_sum(&self, other: &ModuleRep) -> Self {
        assert_eq!(self.side, other.side);
        assert_eq!(self.act.len(), other.act.len());
        let d = self.dim + other.dim;
        let act = self
            .act
            .iter()
            .zip(&other.act)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(a.field(), d, d);
                for r in 0..self.dim {
                    for c in 0..self.dim {
                        m[(r, c)] = a[(r, c)];
                    }
                }
                for r in 0..other.dim {
                    for c in 0..other.dim {
                        m[(self.dim + r, self.dim + c)] = b[(r, c)];
                    }
                }
                m
            })
            .collect();
        Self { dim: d, side: self.side, act }
    }

    /// Unit acts as the identity and the structure-constant relations hold.
    pub fn validate(&self, alg: &FiniteAlgebra) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let f = alg.field();
        if self.act.len() != alg.dim() {
            rep.fail("action_count", [self.act.len(), alg.dim()]);
            return rep;
        }
        if self.act.iter().any(|m| m.shape() != (self.dim, self.dim)) {
            rep.fail("action_shape", [self.dim]);
            return rep;
        }
        rep.check(self.action(f, &alg.unit()) == Matrix::identity(f, self.dim), "unit_acts_trivially", []);
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let composed = match self.side {
                    Side::Left => self.act[i].mul(&self.act[j]),
                    Side::Right => self.act[j].mul(&self.act[i]),
                };
                let expected = self.action(f, &alg.basis_product(i, j));
                rep.check(composed == expected, "action_relations", [i, j]);
            }
        }
        rep
    }
}
