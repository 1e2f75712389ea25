//! The coring `C = sum_s A e_s v_s` of an idempotent partial action, its
//! tensor powers over `A`, the Sweedler coring `A (x)_B A`, and the
//! canonical map between them.
//!
//! Elements of `C (x)_A ... (x)_A C` (k factors) are stored as one
//! coefficient per word `(s_1, ..., s_k)`: every element can be written
//! `sum_w c_w v_{s_1} (x) ... (x) v_{s_k}`, and the coefficient is only
//! determined modulo the annihilator of that generator. The canonical form
//! multiplies `c_w` by `e_{s_1} e_{s_1 s_2} ... e_{s_1 ... s_k}`.

use serde::Serialize;

use crate::algebra::{AlgebraElement, FiniteAlgebra, Subalgebra};
use crate::error::{Error, Result};
use crate::linalg::{build_quotient, Matrix, QuotientSpace};
use crate::partial_action::{GradedBasis, PartialAction};
use crate::report::ValidationReport;

/// `sum_s comps[s] v_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoringElement {
    pub comps: Vec<AlgebraElement>,
}

/// An element of the k-fold tensor power, one coefficient per word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorPower {
    pub k: usize,
    pub comps: Vec<AlgebraElement>,
}

#[derive(Debug, Clone)]
pub struct Coring {
    pa: PartialAction,
    basis: GradedBasis,
}

impl Coring {
    /// Builds the coring data without checking anything; see [`build_coring`].
    pub fn new(pa: PartialAction) -> Self {
        let basis = pa.graded_basis();
        Self { pa, basis }
    }

    pub fn partial_action(&self) -> &PartialAction {
        &self.pa
    }

    fn alg(&self) -> &FiniteAlgebra {
        self.pa.algebra()
    }

    fn g(&self) -> usize {
        self.pa.group().order()
    }

    /// Dimension of `C` over `F_p`.
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn graded_basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn zero(&self) -> CoringElement {
        CoringElement { comps: self.basis.zero_components() }
    }

    /// Canonical form: `comps[s] <- comps[s] e_s`.
    pub fn element(&self, comps: Vec<AlgebraElement>) -> CoringElement {
        assert_eq!(comps.len(), self.g());
        let comps = comps.iter().enumerate().map(|(s, c)| self.pa.cut(c, s)).collect();
        CoringElement { comps }
    }

    /// `a v_s`.
    pub fn monomial(&self, s: usize, a: &[u64]) -> CoringElement {
        let mut comps = self.basis.zero_components();
        comps[s] = AlgebraElement::from_vec(a.to_vec());
        self.element(comps)
    }

    pub fn v(&self, s: usize) -> CoringElement {
        self.monomial(s, &self.alg().unit())
    }

    /// Canonical F_p basis: `(s, a)` with `a` running over the canonical basis of `A e_s`.
    pub fn basis_elements(&self) -> Vec<(usize, CoringElement)> {
        self.basis.basis_elements().into_iter().map(|(s, a)| (s, self.monomial(s, &a))).collect()
    }

    pub fn coordinates(&self, c: &CoringElement) -> Vec<u64> {
        self.basis.flatten(&c.comps).expect("canonical coring element")
    }

    pub fn from_coordinates(&self, v: &[u64]) -> CoringElement {
        CoringElement { comps: self.basis.unflatten(v) }
    }

    pub fn add(&self, x: &CoringElement, y: &CoringElement) -> CoringElement {
        let comps = x.comps.iter().zip(&y.comps).map(|(a, b)| self.alg().add(a, b)).collect();
        CoringElement { comps }
    }

    pub fn scale(&self, s: u64, x: &CoringElement) -> CoringElement {
        CoringElement { comps: x.comps.iter().map(|a| self.alg().scale(s, a)).collect() }
    }

    pub fn left_act(&self, a: &[u64], c: &CoringElement) -> CoringElement {
        self.element(c.comps.iter().map(|x| self.alg().mul(a, x)).collect())
    }

    /// `(a' v_s) a = a' alpha_s(a e_{s^-1}) v_s`.
    pub fn right_act(&self, c: &CoringElement, a: &[u64]) -> CoringElement {
        let comps = c.comps.iter().enumerate().map(|(s, x)| self.alg().mul(x, &self.pa.alpha(s, a))).collect();
        self.element(comps)
    }

    /// `epsilon(sum a_s v_s) = a_1`.
    pub fn counit(&self, c: &CoringElement) -> AlgebraElement {
        c.comps[self.pa.group().identity()].clone()
    }

    // --- tensor powers ---

    pub fn word_index(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &s| acc * self.g() + s)
    }

    pub fn word(&self, mut idx: usize, k: usize) -> Vec<usize> {
        let g = self.g();
        let mut w = vec![0; k];
        for slot in w.iter_mut().rev() {
            *slot = idx % g;
            idx /= g;
        }
        w
    }

    /// `e_{s_1} e_{s_1 s_2} ... e_{s_1 ... s_k}`.
    pub fn word_idempotent(&self, word: &[usize]) -> AlgebraElement {
        let grp = self.pa.group();
        let mut prefix = grp.identity();
        let mut acc = self.alg().unit();
        for &s in word {
            prefix = grp.mul(prefix, s);
            acc = self.pa.cut(&acc, prefix);
        }
        acc
    }

    pub fn tp_zero(&self, k: usize) -> TensorPower {
        let len = self.g().pow(k as u32);
        TensorPower { k, comps: vec![self.alg().zero(); len] }
    }

    pub fn tp_normalize(&self, mut t: TensorPower) -> TensorPower {
        for idx in 0..t.comps.len() {
            let e = self.word_idempotent(&self.word(idx, t.k));
            t.comps[idx] = self.alg().mul(&t.comps[idx], &e);
        }
        t
    }

    pub fn tp_add(&self, x: &TensorPower, y: &TensorPower) -> TensorPower {
        assert_eq!(x.k, y.k);
        let comps = x.comps.iter().zip(&y.comps).map(|(a, b)| self.alg().add(a, b)).collect();
        TensorPower { k: x.k, comps }
    }

    /// Left A-action on a tensor power.
    pub fn tp_left_act(&self, a: &[u64], t: &TensorPower) -> TensorPower {
        let comps = t.comps.iter().map(|c| self.alg().mul(a, c)).collect();
        self.tp_normalize(TensorPower { k: t.k, comps })
    }

    /// `alpha_{s_1}(alpha_{s_2}(... alpha_{s_k}(a e) ... e) e)`: the coefficient
    /// obtained by moving `a` from the right end of `v_{s_1} (x) ... (x) v_{s_k}`
    /// to the front.
    fn move_through(&self, word: &[usize], a: &[u64]) -> AlgebraElement {
        let mut x = AlgebraElement::from_vec(a.to_vec());
        for &s in word.iter().rev() {
            x = self.pa.alpha(s, &x);
        }
        x
    }

    /// Right A-action on a tensor power.
    pub fn tp_right_act(&self, t: &TensorPower, a: &[u64]) -> TensorPower {
        let comps = t
            .comps
            .iter()
            .enumerate()
            .map(|(idx, c)| self.alg().mul(c, &self.move_through(&self.word(idx, t.k), a)))
            .collect();
        self.tp_normalize(TensorPower { k: t.k, comps })
    }

    pub fn as_tensor(&self, c: &CoringElement) -> TensorPower {
        TensorPower { k: 1, comps: c.comps.clone() }
    }

    /// `c (x)_A t`.
    pub fn prepend(&self, c: &CoringElement, t: &TensorPower) -> TensorPower {
        let mut out = self.tp_zero(t.k + 1);
        let stride = t.comps.len();
        for (s, cs) in c.comps.iter().enumerate() {
            for (idx, tw) in t.comps.iter().enumerate() {
                out.comps[s * stride + idx] = self.alg().mul(cs, &self.pa.alpha(s, tw));
            }
        }
        self.tp_normalize(out)
    }

    /// `t (x)_A c`.
    pub fn append(&self, t: &TensorPower, c: &CoringElement) -> TensorPower {
        let mut out = self.tp_zero(t.k + 1);
        let g = self.g();
        for (idx, tw) in t.comps.iter().enumerate() {
            let word = self.word(idx, t.k);
            for (s, cs) in c.comps.iter().enumerate() {
                out.comps[idx * g + s] = self.alg().mul(tw, &self.move_through(&word, cs));
            }
        }
        self.tp_normalize(out)
    }

    /// `c (x)_A d` in the second tensor power.
    pub fn tensor(&self, c: &CoringElement, d: &CoringElement) -> TensorPower {
        self.prepend(c, &self.as_tensor(d))
    }

    /// `Delta(a v_s) = sum_t a v_t (x) v_{t^-1 s}`.
    pub fn comultiply(&self, c: &CoringElement) -> TensorPower {
        let grp = self.pa.group();
        let mut out = self.tp_zero(2);
        for (s, a) in c.comps.iter().enumerate() {
            for t in grp.elements() {
                let idx = self.word_index(&[t, grp.mul(grp.inv(t), s)]);
                out.comps[idx] = self.alg().add(&out.comps[idx], a);
            }
        }
        self.tp_normalize(out)
    }

    /// `(Delta (x) C)` applied to a second tensor power, term by term.
    pub fn comultiply_left(&self, t: &TensorPower) -> TensorPower {
        assert_eq!(t.k, 2);
        let mut out = self.tp_zero(3);
        for (idx, c) in t.comps.iter().enumerate() {
            let w = self.word(idx, 2);
            let term = self.append(&self.comultiply(&self.monomial(w[0], c)), &self.v(w[1]));
            out = self.tp_add(&out, &term);
        }
        out
    }

    /// `(C (x) Delta)` applied to a second tensor power, term by term.
    pub fn comultiply_right(&self, t: &TensorPower) -> TensorPower {
        assert_eq!(t.k, 2);
        let mut out = self.tp_zero(3);
        for (idx, c) in t.comps.iter().enumerate() {
            let w = self.word(idx, 2);
            let term = self.prepend(&self.monomial(w[0], c), &self.comultiply(&self.v(w[1])));
            out = self.tp_add(&out, &term);
        }
        out
    }

    /// `(epsilon (x) C)`.
    pub fn counit_left(&self, t: &TensorPower) -> CoringElement {
        assert_eq!(t.k, 2);
        let mut out = self.zero();
        for (idx, c) in t.comps.iter().enumerate() {
            let w = self.word(idx, 2);
            let eps = self.counit(&self.monomial(w[0], c));
            out = self.add(&out, &self.left_act(&eps, &self.v(w[1])));
        }
        out
    }

    /// `(C (x) epsilon)`.
    pub fn counit_right(&self, t: &TensorPower) -> CoringElement {
        assert_eq!(t.k, 2);
        let mut out = self.zero();
        for (idx, c) in t.comps.iter().enumerate() {
            let w = self.word(idx, 2);
            let eps = self.counit(&self.v(w[1]));
            out = self.add(&out, &self.right_act(&self.monomial(w[0], c), &eps));
        }
        out
    }

    /// Coassociativity, both counit laws, the right module property of the
    /// bimodule structure, and left and right A-linearity of `Delta` and
    /// `epsilon`, on every canonical basis element `a v_s` against every
    /// algebra basis element. Witnesses are `[s, basis index of C, ...]`.
    pub fn check_axioms(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let alg = self.alg();
        let n = alg.dim();
        for (x, (s, c)) in self.basis_elements().into_iter().enumerate() {
            let delta = self.comultiply(&c);
            rep.check(self.comultiply_left(&delta) == self.comultiply_right(&delta), "coassociativity", [s, x]);
            rep.check(self.counit_left(&delta) == c, "left_counit", [s, x]);
            rep.check(self.counit_right(&delta) == c, "right_counit", [s, x]);
            for i in 0..n {
                let b = alg.basis(i);
                let cb = self.right_act(&c, &b);
                rep.check(self.comultiply(&cb) == self.tp_right_act(&delta, &b), "delta_right_linear", [s, x, i]);
                rep.check(self.counit(&cb) == alg.mul(&self.counit(&c), &b), "counit_right_linear", [s, x, i]);
                rep.check(
                    self.comultiply(&self.left_act(&b, &c)) == self.tp_left_act(&b, &delta),
                    "delta_left_linear",
                    [s, x, i],
                );
                for j in 0..n {
                    let bj = alg.basis(j);
                    rep.check(
                        self.right_act(&cb, &bj) == self.right_act(&c, &alg.mul(&b, &bj)),
                        "right_action",
                        [s, x, i, j],
                    );
                }
            }
        }
        rep
    }

    /// `x = sum_s v_s`, checked to be grouplike.
    pub fn grouplike(&self) -> Result<CoringElement> {
        let x = self.element(vec![self.alg().unit(); self.g()]);
        if self.comultiply(&x) != self.tensor(&x, &x) {
            return Err(Error::Consistency("Delta(x) != x (x) x".into()));
        }
        if self.counit(&x) != self.alg().unit() {
            return Err(Error::Consistency("epsilon(x) != 1".into()));
        }
        Ok(x)
    }

    /// The coaction on `A` induced by the grouplike: `a -> x a`.
    pub fn coaction(&self, a: &[u64]) -> CoringElement {
        let x = self.element(vec![self.alg().unit(); self.g()]);
        self.right_act(&x, a)
    }
}

/// Validates the partial action and the coring axioms.
pub fn build_coring(pa: &PartialAction) -> Result<Coring> {
    let rep = pa.validate();
    if !rep.is_ok() {
        return Err(Error::Invalid { what: "partial action", report: rep });
    }
    let c = Coring::new(pa.clone());
    let rep = c.check_axioms();
    if !rep.is_ok() {
        return Err(Error::Invalid { what: "coring", report: rep });
    }
    Ok(c)
}

pub fn check_coring_axioms(c: &Coring) -> ValidationReport {
    c.check_axioms()
}

/// `D = A (x)_B A` as a quotient of `A (x)_{F_p} A`, whose basis vector
/// `b_i (x) b_j` has index `i n + j`.
#[derive(Debug, Clone)]
pub struct SweedlerCoring {
    alg: FiniteAlgebra,
    sub: Subalgebra,
    quotient: QuotientSpace,
}

impl SweedlerCoring {
    pub fn new(alg: &FiniteAlgebra, sub: &Subalgebra) -> Result<Self> {
        let rep = sub.validate(alg);
        if !rep.is_ok() {
            return Err(Error::Invalid { what: "subring", report: rep });
        }
        let relations = balanced_relations(alg, sub, 2);
        let quotient = build_quotient(alg.field(), alg.dim().pow(2), &relations)?;
        Ok(Self { alg: alg.clone(), sub: sub.clone(), quotient })
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn quotient(&self) -> &QuotientSpace {
        &self.quotient
    }

    /// `epsilon_D(a (x) a') = a a'` on quotient coordinates.
    pub fn counit_matrix(&self) -> Matrix {
        let n = self.alg.dim();
        let cols: Vec<Vec<u64>> = (0..n * n).map(|ij| self.alg.basis_product(ij / n, ij % n)).collect();
        Matrix::from_columns(self.alg.field(), n, &cols).mul(self.quotient.section())
    }

    /// Representative of `Delta_D(b_i (x) b_j) = b_i (x) 1 (x) b_j` in `A^{(x)3}`.
    pub fn comultiply_ambient(&self, v: &[u64]) -> Vec<u64> {
        let n = self.alg.dim();
        let one = self.alg.unit();
        let f = self.alg.field();
        let mut out = vec![0; n * n * n];
        for (ij, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (i, j) = (ij / n, ij % n);
            for (k, &u) in one.iter().enumerate() {
                let idx = (i * n + k) * n + j;
                out[idx] = f.add(out[idx], f.mul(c, u));
            }
        }
        out
    }

    /// `Delta_D` as a map from `D` to `A (x)_B A (x)_B A`, the latter built
    /// as its own quotient space.
    pub fn comultiplication_matrix(&self) -> Result<(QuotientSpace, Matrix)> {
        let n = self.alg.dim();
        let triple = build_quotient(self.alg.field(), n * n * n, &balanced_relations(&self.alg, &self.sub, 3))?;
        let section = self.quotient.section();
        let cols: Vec<Vec<u64>> =
            (0..self.dim()).map(|t| triple.project(&self.comultiply_ambient(&section.column(t)))).collect();
        let m = Matrix::from_columns(self.alg.field(), triple.dim(), &cols);
        Ok((triple, m))
    }
}

/// Relations `... (x) a b (x) a' (x) ... - ... (x) a (x) b a' (x) ...` for every
/// adjacent pair of slots in the `k`-fold tensor power over `F_p`.
fn balanced_relations(alg: &FiniteAlgebra, sub: &Subalgebra, k: usize) -> Matrix {
    let n = alg.dim();
    let f = alg.field();
    let total = n.pow(k as u32);
    let mut rel = Matrix::zeros(f, 0, total);
    let bs = sub.basis_elements();
    for slot in 0..k - 1 {
        let stride_right = n.pow((k - 2 - slot) as u32);
        let stride_left = stride_right * n;
        for idx in 0..total {
            // Only enumerate words once per (left, right) pair at this slot.
            let i = (idx / stride_left) % n;
            let j = (idx / stride_right) % n;
            if i != 0 || j != 0 {
                continue;
            }
            let base = idx;
            for b in &bs {
                for i in 0..n {
                    for j in 0..n {
                        let mut row = vec![0; total];
                        let left = alg.mul(&alg.basis(i), b);
                        for (k2, &c) in left.iter().enumerate() {
                            let pos = base + k2 * stride_left + j * stride_right;
                            row[pos] = f.add(row[pos], c);
                        }
                        let right = alg.mul(b, &alg.basis(j));
                        for (l, &c) in right.iter().enumerate() {
                            let pos = base + i * stride_left + l * stride_right;
                            row[pos] = f.sub(row[pos], c);
                        }
                        if row.iter().any(|&c| c != 0) {
                            rel.push_row(&row);
                        }
                    }
                }
            }
        }
    }
    rel
}

pub fn sweedler_coring(alg: &FiniteAlgebra, sub: &Subalgebra) -> Result<SweedlerCoring> {
    SweedlerCoring::new(alg, sub)
}

#[derive(Debug, Clone, Serialize)]
pub struct GaloisVerdict {
    /// From quotient coordinates of `A (x)_B A` to canonical coordinates of `C`.
    pub can_matrix: Matrix,
    pub bijective: bool,
    pub coring_morphism_ok: bool,
    pub well_defined: bool,
    /// `(dim A (x)_B A, dim C)`.
    pub dims: (usize, usize),
}

/// `can(a (x) b) = sum_s a alpha_s(b e_{s^-1}) v_s` on `A (x)_B A`.
pub fn canonical_map(pa: &PartialAction, sub: &Subalgebra) -> Result<GaloisVerdict> {
    pa.check_invariant_subring(sub)?;
    let alg = pa.algebra();
    let n = alg.dim();
    let coring = Coring::new(pa.clone());
    let d = SweedlerCoring::new(alg, sub)?;

    let can_pure = |i: &[u64], j: &[u64]| -> CoringElement { coring.left_act(i, &coring.coaction(j)) };
    let pure: Vec<CoringElement> = (0..n * n).map(|ij| can_pure(&alg.basis(ij / n), &alg.basis(ij % n))).collect();
    let can_on = |v: &[u64]| -> CoringElement {
        v.iter()
            .zip(&pure)
            .filter(|(&c, _)| c != 0)
            .fold(coring.zero(), |acc, (&c, e)| coring.add(&acc, &coring.scale(c, e)))
    };

    let ambient_cols: Vec<Vec<u64>> = pure.iter().map(|c| coring.coordinates(c)).collect();
    let can_ambient = Matrix::from_columns(alg.field(), coring.dim(), &ambient_cols);
    let well_defined = can_ambient.mul(&d.quotient().relations().transpose()).is_zero();
    let can_matrix = can_ambient.mul(d.quotient().section());
    let bijective = can_matrix.is_invertible();

    // Coring morphism: Delta_C can = (can (x) can) Delta_D and epsilon_C can = epsilon_D.
    let section = d.quotient().section();
    let mut morphism = true;
    for t in 0..d.dim() {
        let rep = section.column(t);
        let image = can_on(&rep);
        let lhs = coring.comultiply(&image);
        let mut rhs = coring.tp_zero(2);
        for (ij, &c) in rep.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let left = can_pure(&alg.basis(ij / n), &alg.unit());
            let right = can_pure(&alg.unit(), &alg.basis(ij % n));
            let term = coring.tensor(&coring.scale(c, &left), &right);
            rhs = coring.tp_add(&rhs, &term);
        }
        morphism &= lhs == rhs;
    }
    let counit_c: Vec<Vec<u64>> = (0..d.dim()).map(|t| coring.counit(&can_on(&section.column(t))).into_vec()).collect();
    morphism &= Matrix::from_columns(alg.field(), n, &counit_c) == d.counit_matrix();

    Ok(GaloisVerdict {
        can_matrix,
        bijective,
        coring_morphism_ok: morphism,
        well_defined,
        dims: (d.dim(), coring.dim()),
    })
}

/// `can` with `B = A^G` is bijective.
pub fn is_partial_galois(pa: &PartialAction) -> Result<bool> {
    let t = pa.invariants()?;
    Ok(canonical_map(pa, &t)?.bijective)
}
