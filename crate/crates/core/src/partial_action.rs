//! Idempotent partial actions `(e_s, alpha_s)` of a finite group on a
//! finite algebra, their global counterparts, invariants, and the partial
//! skew group ring.
//!
//! Each `alpha_s` is stored as a total `n x n` matrix `L_s` with the
//! convention `L_s(a) = alpha_s(a e_{s^-1})`: it kills the complement of the
//! domain ideal `A e_{s^-1}`. Every formula below still multiplies by the
//! domain idempotent explicitly, so mutated data is evaluated literally.

use crate::algebra::Subalgebra;
use crate::algebra::{AlgebraElement, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::group::FiniteGroup;
use crate::linalg::{Matrix, Subspace};
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAction {
    alg: FiniteAlgebra,
    grp: FiniteGroup,
    idem: Vec<AlgebraElement>,
    maps: Vec<Matrix>,
    // L_s composed with multiplication by e_{s^-1}.
    trunc: Vec<Matrix>,
}

impl PartialAction {
    /// Structural construction: one idempotent and one `n x n` matrix per
    /// group element. Axioms are checked by [`validate`](Self::validate).
    pub fn new(alg: FiniteAlgebra, grp: FiniteGroup, idem: Vec<AlgebraElement>, maps: Vec<Matrix>) -> Result<Self> {
        let (n, g) = (alg.dim(), grp.order());
        if idem.len() != g {
            return Err(Error::shape(format!("{} idempotents for a group of order {g}", idem.len())));
        }
        if maps.len() != g {
            return Err(Error::shape(format!("{} alpha matrices for a group of order {g}", maps.len())));
        }
        if let Some(s) = idem.iter().position(|e| e.len() != n) {
            return Err(Error::shape(format!("idempotent {s} has the wrong length")));
        }
        if let Some(s) = maps.iter().position(|m| m.shape() != (n, n)) {
            return Err(Error::shape(format!("alpha matrix {s} is not {n}x{n}")));
        }
        if let Some(s) = maps.iter().position(|m| m.field() != alg.field()) {
            return Err(Error::shape(format!("alpha matrix {s} is over the wrong field")));
        }
        let trunc = grp.elements().map(|s| maps[s].mul(&alg.right_mul_matrix(&idem[grp.inv(s)]))).collect();
        Ok(Self { alg, grp, idem, maps, trunc })
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.alg
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.grp
    }

    pub fn field(&self) -> Fp {
        self.alg.field()
    }

    pub fn idempotent(&self, s: usize) -> &AlgebraElement {
        &self.idem[s]
    }

    pub fn idempotents(&self) -> &[AlgebraElement] {
        &self.idem
    }

    /// The stored matrix `L_s`.
    pub fn map(&self, s: usize) -> &Matrix {
        &self.maps[s]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Matrix of `a -> alpha_s(a e_{s^-1})`.
    pub fn alpha_matrix(&self, s: usize) -> &Matrix {
        &self.trunc[s]
    }

    /// `alpha_s(a e_{s^-1})`.
    pub fn alpha(&self, s: usize, a: &[u64]) -> AlgebraElement {
        self.alg.apply(&self.trunc[s], a)
    }

    /// `a e_s`.
    pub fn cut(&self, a: &[u64], s: usize) -> AlgebraElement {
        self.alg.mul(a, &self.idem[s])
    }

    /// The ideal `A e_s`.
    pub fn ideal(&self, s: usize) -> Subspace {
        self.alg.ideal(&self.idem[s])
    }

    /// Replaces `L_s`, keeping everything else. Used to build mutants.
    pub fn with_map(&self, s: usize, m: Matrix) -> Result<Self> {
        let mut maps = self.maps.clone();
        maps[s] = m;
        Self::new(self.alg.clone(), self.grp.clone(), self.idem.clone(), maps)
    }

    /// True when every `e_s` is the unit, i.e. the action is global.
    pub fn is_global(&self) -> bool {
        let one = self.alg.unit();
        self.idem.iter().all(|e| *e == one)
    }

    pub fn graded_basis(&self) -> GradedBasis {
        GradedBasis::new(self.field(), self.alg.dim(), self.grp.elements().map(|s| self.ideal(s)).collect())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = self.alg.validate();
        rep.merge(self.grp.validate());
        if !rep.is_ok() {
            return rep;
        }
        let alg = &self.alg;
        let f = alg.field();
        let n = alg.dim();
        let one = alg.unit();
        let id = self.grp.identity();

        for s in self.grp.elements() {
            rep.check(alg.is_central_idempotent(&self.idem[s]), "central_idempotent", [s]);
        }
        rep.check(self.idem[id] == one, "identity_idempotent", [id]);
        rep.check(self.maps[id] == Matrix::identity(f, n), "identity_map", [id]);

        for s in self.grp.elements() {
            let si = self.grp.inv(s);
            let (dom, cod) = (&self.idem[si], &self.idem[s]);
            for i in 0..n {
                let b = alg.basis(i);
                let image = alg.apply(&self.maps[s], &b);
                rep.check(image == alg.apply(&self.maps[s], &alg.mul(&b, dom)), "kills_complement", [s, i]);
                rep.check(alg.mul(&image, cod) == image, "image_in_ideal", [s, i]);
            }
            rep.check(alg.apply(&self.maps[s], dom) == *cod, "maps_domain_unit", [s]);

            let dom_space = alg.ideal(dom);
            let cod_space = alg.ideal(cod);
            let restricted = self.maps[s].mul(&dom_space.basis().transpose());
            let r = restricted.rank();
            let ok = r == dom_space.dim() && dom_space.dim() == cod_space.dim();
            rep.check(ok, "bijective", [s, r, dom_space.dim()]);

            let cut: Vec<AlgebraElement> = (0..n).map(|i| alg.mul(&alg.basis(i), dom)).collect();
            for i in 0..n {
                for j in 0..n {
                    let lhs = alg.apply(&self.maps[s], &alg.mul(&cut[i], &cut[j]));
                    let rhs = alg.mul(&alg.apply(&self.maps[s], &cut[i]), &alg.apply(&self.maps[s], &cut[j]));
                    rep.check(lhs == rhs, "multiplicative", [s, i, j]);
                }
            }
        }

        for (s, t, i) in self.compatibility_failures() {
            rep.fail("compatibility", [s, t, i]);
        }
        rep
    }

    /// Triples `(s, t, i)` where
    /// `alpha_s(alpha_t(b_i e_{t^-1}) e_{s^-1}) != alpha_{st}(b_i e_{(st)^-1}) e_s`.
    pub fn compatibility_failures(&self) -> Vec<(usize, usize, usize)> {
        let alg = &self.alg;
        let mut out = Vec::new();
        for s in self.grp.elements() {
            for t in self.grp.elements() {
                let st = self.grp.mul(s, t);
                for i in 0..alg.dim() {
                    let b = alg.basis(i);
                    let lhs = self.alpha(s, &self.alpha(t, &b));
                    let rhs = alg.mul(&self.alpha(st, &b), &self.idem[s]);
                    if lhs != rhs {
                        out.push((s, t, i));
                    }
                }
            }
        }
        out
    }

    /// The invariant subring `T = {a : alpha_s(a e_{s^-1}) = a e_s for all s}`.
    pub fn invariants(&self) -> Result<Subalgebra> {
        let n = self.alg.dim();
        let mut system = Matrix::zeros(self.field(), 0, n);
        for s in self.grp.elements() {
            let block = self.trunc[s].sub(&self.alg.right_mul_matrix(&self.idem[s]));
            system = system.vstack(&block);
        }
        Subalgebra::from_span(&self.alg, &system.kernel())
    }

    /// Checks `B` against the invariants, returning the first element of `B`
    /// moved by some `alpha_s`.
    pub fn check_invariant_subring(&self, sub: &Subalgebra) -> Result<()> {
        for b in sub.basis_elements() {
            for s in self.grp.elements() {
                if self.alpha(s, &b) != self.cut(&b, s) {
                    return Err(Error::NotInvariant { sigma: s, element: b.into_vec() });
                }
            }
        }
        Ok(())
    }

    /// The partial skew group ring `sum_s A e_s u_s` with
    /// `(a u_s)(b u_t) = alpha_s(alpha_{s^-1}(a) b) u_{st}`. Its basis is the
    /// concatenation over `s` of the canonical bases of `A e_s`.
    pub fn skew_group_ring(&self) -> Result<FiniteAlgebra> {
        if !self.alg.is_commutative() {
            return Err(Error::NonCommutative("partial skew group ring"));
        }
        let gb = self.graded_basis();
        let mut sc = vec![vec![vec![0; gb.dim()]; gb.dim()]; gb.dim()];
        for (x, (s, a)) in gb.basis_elements().into_iter().enumerate() {
            for (y, (t, b)) in gb.basis_elements().into_iter().enumerate() {
                let st = self.grp.mul(s, t);
                let inner = self.alg.mul(&self.alpha(self.grp.inv(s), &a), &b);
                let coeff = self.alpha(s, &inner);
                let mut comps = vec![self.alg.zero(); self.grp.order()];
                comps[st] = coeff;
                sc[x][y] = gb.flatten(&comps).ok_or_else(|| {
                    Error::NotInSubspace(format!("skew product of basis elements {x}, {y} leaves A e_{st}"))
                })?;
            }
        }
        let mut unit = vec![self.alg.zero(); self.grp.order()];
        unit[self.grp.identity()] = self.alg.unit();
        let unit = gb.flatten(&unit).expect("unit lies in A e_1");
        FiniteAlgebra::new(self.alg.p(), &sc, &unit)
    }
}

pub fn validate_partial_action(pa: &PartialAction) -> ValidationReport {
    pa.validate()
}

pub fn alpha_apply(pa: &PartialAction, s: usize, a: &AlgebraElement) -> AlgebraElement {
    pa.alpha(s, a)
}

pub fn invariants(pa: &PartialAction) -> Result<Subalgebra> {
    pa.invariants()
}

pub fn skew_group_ring(pa: &PartialAction) -> Result<FiniteAlgebra> {
    pa.skew_group_ring()
}

/// A direct sum `sum_s A e_s` indexed by the group, flattened to `F_p`
/// coordinates: block `s` uses the canonical basis of the ideal `A e_s`.
/// Blocks with `e_s = 0` are kept with dimension zero.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    field: Fp,
    n: usize,
    blocks: Vec<Subspace>,
    offsets: Vec<usize>,
    dim: usize,
}

impl GradedBasis {
    pub fn new(field: Fp, n: usize, blocks: Vec<Subspace>) -> Self {
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut dim = 0;
        for b in &blocks {
            offsets.push(dim);
            dim += b.dim();
        }
        Self { field, n, blocks, offsets, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn block(&self, s: usize) -> &Subspace {
        &self.blocks[s]
    }

    pub fn block_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Subspace::dim).collect()
    }

    /// `(s, a)` for every flattened basis vector, in order.
    pub fn basis_elements(&self) -> Vec<(usize, AlgebraElement)> {
        let mut out = Vec::with_capacity(self.dim);
        for (s, b) in self.blocks.iter().enumerate() {
            for row in b.basis_vectors() {
                out.push((s, AlgebraElement::from_vec(row)));
            }
        }
        out
    }

    /// Flattened coordinates; `None` if some component leaves its block.
    pub fn flatten(&self, comps: &[AlgebraElement]) -> Option<Vec<u64>> {
        assert_eq!(comps.len(), self.blocks.len());
        let mut out = Vec::with_capacity(self.dim);
        for (b, c) in self.blocks.iter().zip(comps) {
            out.extend(b.coordinates(c)?);
        }
        Some(out)
    }

    pub fn unflatten(&self, v: &[u64]) -> Vec<AlgebraElement> {
        assert_eq!(v.len(), self.dim);
        self.blocks
            .iter()
            .zip(&self.offsets)
            .map(|(b, &o)| AlgebraElement::from_vec(b.combine(&v[o..o + b.dim()])))
            .collect()
    }

    pub fn zero_components(&self) -> Vec<AlgebraElement> {
        vec![AlgebraElement::from_vec(vec![0; self.n]); self.blocks.len()]
    }

    pub fn field(&self) -> Fp {
        self.field
    }
}

/// A global action `s -> beta_s` of a finite group on an algebra `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalActionInstance {
    pub amb: FiniteAlgebra,
    pub grp: FiniteGroup,
    pub auto: Vec<Matrix>,
}

impl GlobalActionInstance {
    pub fn new(amb: FiniteAlgebra, grp: FiniteGroup, auto: Vec<Matrix>) -> Result<Self> {
        let n = amb.dim();
        if auto.len() != grp.order() {
            return Err(Error::shape(format!("{} automorphisms for a group of order {}", auto.len(), grp.order())));
        }
        if let Some(s) = auto.iter().position(|m| m.shape() != (n, n)) {
            return Err(Error::shape(format!("automorphism {s} is not {n}x{n}")));
        }
        Ok(Self { amb, grp, auto })
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = self.amb.validate();
        rep.merge(self.grp.validate());
        if !rep.is_ok() {
            return rep;
        }
        let alg = &self.amb;
        let n = alg.dim();
        let f = alg.field();
        let id = self.grp.identity();
        rep.check(self.auto[id] == Matrix::identity(f, n), "identity_map", [id]);
        for s in self.grp.elements() {
            let beta = &self.auto[s];
            rep.check(alg.apply(beta, &alg.unit()) == alg.unit(), "automorphism_unital", [s]);
            rep.check(beta.is_invertible(), "automorphism_invertible", [s]);
            for i in 0..n {
                for j in 0..n {
                    let lhs = alg.apply(beta, &alg.basis_product(i, j));
                    let rhs = alg.mul(&alg.apply(beta, &alg.basis(i)), &alg.apply(beta, &alg.basis(j)));
                    rep.check(lhs == rhs, "automorphism_multiplicative", [s, i, j]);
                }
            }
            for t in self.grp.elements() {
                let ok = beta.mul(&self.auto[t]) == self.auto[self.grp.mul(s, t)];
                rep.check(ok, "homomorphism", [s, t]);
            }
        }
        rep
    }

    /// Restricts the action to the ideal `S e`, producing the algebra `A = S e`
    /// (unit `e`, canonical basis of the ideal) and the partial action with
    /// `e_s = e beta_s(e)` and `alpha_s(x) = beta_s(x) e_s`.
    pub fn restrict(&self, e: &[u64]) -> Result<(FiniteAlgebra, PartialAction)> {
        let rep = self.validate();
        if !rep.is_ok() {
            return Err(Error::Invalid { what: "global action", report: rep });
        }
        let s_alg = &self.amb;
        if e.len() != s_alg.dim() {
            return Err(Error::shape("restriction idempotent has the wrong length"));
        }
        if e.iter().all(|&c| c == 0) {
            return Err(Error::ZeroAlgebra);
        }
        if !s_alg.is_central_idempotent(e) {
            return Err(Error::NotCentralIdempotent(format!("{e:?}")));
        }
        let ideal = s_alg.ideal(e);
        let rows = ideal.basis_vectors();
        let coords = |x: &[u64]| -> Vec<u64> { ideal.coordinates(x).expect("element lies in S e") };

        let unit = coords(e);
        let a_alg =
            FiniteAlgebra::from_fn(s_alg.field(), rows.len(), unit, |i, j| coords(&s_alg.mul(&rows[i], &rows[j])));

        let ambient_idem: Vec<AlgebraElement> =
            self.grp.elements().map(|s| s_alg.mul(e, &s_alg.apply(&self.auto[s], e))).collect();
        let idem = ambient_idem.iter().map(|x| AlgebraElement::from_vec(coords(x))).collect();
        let maps = self
            .grp
            .elements()
            .map(|s| {
                let dom = &ambient_idem[self.grp.inv(s)];
                let cols: Vec<Vec<u64>> = rows
                    .iter()
                    .map(|x| {
                        let moved = s_alg.apply(&self.auto[s], &s_alg.mul(x, dom));
                        coords(&s_alg.mul(&moved, &ambient_idem[s]))
                    })
                    .collect();
                Matrix::from_columns(s_alg.field(), rows.len(), &cols)
            })
            .collect();
        let pa = PartialAction::new(a_alg.clone(), self.grp.clone(), idem, maps)?;
        let rep = pa.validate();
        if !rep.is_ok() {
            return Err(Error::Invalid { what: "restricted partial action", report: rep });
        }
        Ok((a_alg, pa))
    }
}

pub fn restrict_global_action(ga: &GlobalActionInstance, e: &AlgebraElement) -> Result<(FiniteAlgebra, PartialAction)> {
    ga.restrict(e)
}
