//! The left dual ring `*C = sum_s u_s A e_s`, its Frobenius system over
//! `A`, the comparison with the partial skew group ring, and `*can`.
//!
//! `u_s a` is the left A-linear functional `sum_r c_r v_r -> c_s a`.

use serde::Serialize;

use crate::algebra::{AlgebraElement, FiniteAlgebra, Subalgebra};
use crate::coring::{Coring, CoringElement, TensorPower};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::partial_action::{GradedBasis, PartialAction};
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualElement {
    pub comps: Vec<AlgebraElement>,
}

/// `sum_{s,t} u_s (x) u_t comps[s g + t]`, the coefficient lying in `A e_t e_{ts}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualTensor {
    pub comps: Vec<AlgebraElement>,
}

#[derive(Debug, Clone)]
pub struct DualRing {
    pa: PartialAction,
    basis: GradedBasis,
    coring: Coring,
    table: FiniteAlgebra,
}

impl DualRing {
    pub fn new(pa: &PartialAction) -> Result<Self> {
        let rep = pa.validate();
        if !rep.is_ok() {
            return Err(Error::Invalid { what: "partial action", report: rep });
        }
        Ok(Self::new_unchecked(pa))
    }

    /// Builds the multiplication table from the product rule without
    /// validating the partial action first.
    pub fn new_unchecked(pa: &PartialAction) -> Self {
        let basis = pa.graded_basis();
        let coring = Coring::new(pa.clone());
        let elems: Vec<(usize, AlgebraElement)> = basis.basis_elements();
        let mut ring =
            Self { pa: pa.clone(), basis: basis.clone(), coring, table: FiniteAlgebra::prime_field(pa.field()) };
        let mut unit = vec![0; basis.dim()];
        let one = ring.u(pa.group().identity());
        unit.copy_from_slice(&ring.flatten(&one));
        let dim = basis.dim();
        let table = FiniteAlgebra::from_fn(pa.field(), dim, unit, |x, y| {
            let (s, a) = &elems[x];
            let (t, b) = &elems[y];
            let prod = ring.mul(&ring.monomial(*s, a), &ring.monomial(*t, b));
            ring.flatten(&prod)
        });
        ring.table = table;
        ring
    }

    pub fn partial_action(&self) -> &PartialAction {
        &self.pa
    }

    /// The multiplication table on the canonical basis `(s, basis of A e_s)`.
    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.table
    }

    pub fn graded_basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    fn alg(&self) -> &FiniteAlgebra {
        self.pa.algebra()
    }

    fn g(&self) -> usize {
        self.pa.group().order()
    }

    pub fn element(&self, comps: Vec<AlgebraElement>) -> DualElement {
        let comps = comps.iter().enumerate().map(|(s, c)| self.pa.cut(c, s)).collect();
        DualElement { comps }
    }

    pub fn zero(&self) -> DualElement {
        DualElement { comps: self.basis.zero_components() }
    }

    /// `u_s a`.
    pub fn monomial(&self, s: usize, a: &[u64]) -> DualElement {
        let mut comps = self.basis.zero_components();
        comps[s] = AlgebraElement::from_vec(a.to_vec());
        self.element(comps)
    }

    pub fn u(&self, s: usize) -> DualElement {
        self.monomial(s, &self.alg().unit())
    }

    pub fn one(&self) -> DualElement {
        self.u(self.pa.group().identity())
    }

    /// `j(a) = u_1 a`.
    pub fn j(&self, a: &[u64]) -> DualElement {
        self.monomial(self.pa.group().identity(), a)
    }

    pub fn basis_elements(&self) -> Vec<DualElement> {
        self.basis.basis_elements().iter().map(|(s, a)| self.monomial(*s, a)).collect()
    }

    pub fn flatten(&self, x: &DualElement) -> Vec<u64> {
        self.basis.flatten(&x.comps).expect("canonical dual element")
    }

    pub fn unflatten(&self, v: &[u64]) -> DualElement {
        DualElement { comps: self.basis.unflatten(v) }
    }

    pub fn add(&self, x: &DualElement, y: &DualElement) -> DualElement {
        DualElement { comps: x.comps.iter().zip(&y.comps).map(|(a, b)| self.alg().add(a, b)).collect() }
    }

    /// `u_t b # u_s a = u_{st} alpha_s(b e_{s^-1}) a`.
    pub fn mul(&self, x: &DualElement, y: &DualElement) -> DualElement {
        let grp = self.pa.group();
        let mut comps = self.basis.zero_components();
        for (t, b) in x.comps.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            for (s, a) in y.comps.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let st = grp.mul(s, t);
                let term = self.alg().mul(&self.pa.alpha(s, b), a);
                comps[st] = self.alg().add(&comps[st], &term);
            }
        }
        self.element(comps)
    }

    // --- functional picture ---

    /// `f(c) = sum_s c_s f_s`.
    pub fn eval(&self, f: &DualElement, c: &CoringElement) -> AlgebraElement {
        let alg = self.alg();
        c.comps.iter().zip(&f.comps).fold(alg.zero(), |acc, (x, y)| alg.add(&acc, &alg.mul(x, y)))
    }

    /// The functional determined by its values on the `v_s`.
    fn functional(&self, values: impl Fn(&CoringElement) -> AlgebraElement) -> DualElement {
        let comps = (0..self.g()).map(|s| values(&self.coring.v(s))).collect();
        self.element(comps)
    }

    /// `(f # g)(c) = g(c_(1) f(c_(2)))`.
    pub fn compose(&self, f: &DualElement, g: &DualElement, c: &CoringElement) -> AlgebraElement {
        self.eval(g, &self.contract_right(f, &self.coring.comultiply(c)))
    }

    /// `c_(1) f(c_(2))` for `delta = c_(1) (x) c_(2)`.
    fn contract_right(&self, f: &DualElement, delta: &TensorPower) -> CoringElement {
        let mut inner = self.coring.zero();
        for (idx, t) in delta.comps.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            let w = self.coring.word(idx, 2);
            let left = self.coring.monomial(w[0], t);
            let fv = self.eval(f, &self.coring.v(w[1]));
            inner = self.coring.add(&inner, &self.coring.right_act(&left, &fv));
        }
        inner
    }

    /// `(b f)(c) = f(c b)`.
    pub fn left_a(&self, b: &[u64], f: &DualElement) -> DualElement {
        self.functional(|c| self.eval(f, &self.coring.right_act(c, b)))
    }

    /// `(f b)(c) = f(c) b`.
    pub fn right_a(&self, f: &DualElement, b: &[u64]) -> DualElement {
        self.functional(|c| self.alg().mul(&self.eval(f, c), b))
    }

    /// The right action on `A`: `a . (u_t a_t) = alpha_t(a e_{t^-1}) a_t`.
    pub fn act_on_algebra(&self, a: &[u64], f: &DualElement) -> AlgebraElement {
        let alg = self.alg();
        f.comps.iter().enumerate().fold(alg.zero(), |acc, (t, at)| alg.add(&acc, &alg.mul(&self.pa.alpha(t, a), at)))
    }

    /// The same action through the coaction: `a . f = f(x a)`.
    pub fn act_on_algebra_via_coaction(&self, a: &[u64], f: &DualElement) -> AlgebraElement {
        self.eval(f, &self.coring.coaction(a))
    }

    /// Associativity and unit of the table, agreement with functional
    /// composition on every basis pair and every basis element of `C`,
    /// the commutation rule `b u_t = u_t alpha_t(b e_{t^-1})`, and `j` unital
    /// and multiplicative.
    pub fn check(&self) -> ValidationReport {
        let mut rep = self.table.validate();
        let alg = self.alg();
        let elems = self.basis_elements();
        let cbasis = self.coring.basis_elements();
        let deltas: Vec<TensorPower> = cbasis.iter().map(|(_, c)| self.coring.comultiply(c)).collect();
        for (x, f) in elems.iter().enumerate() {
            // c_(1) f(c_(2)) does not depend on the second factor
            let inner: Vec<CoringElement> = deltas.iter().map(|d| self.contract_right(f, d)).collect();
            for (y, g) in elems.iter().enumerate() {
                let prod = self.mul(f, g);
                for (k, (_, c)) in cbasis.iter().enumerate() {
                    rep.check(self.eval(&prod, c) == self.eval(g, &inner[k]), "functional_composition", [x, y, k]);
                }
            }
        }
        for i in 0..alg.dim() {
            let b = alg.basis(i);
            for t in self.pa.group().elements() {
                let expected = self.monomial(t, &self.pa.alpha(t, &b));
                let ok = self.left_a(&b, &self.u(t)) == expected && self.mul(&self.j(&b), &self.u(t)) == expected;
                rep.check(ok, "commutation_rule", [i, t]);
            }
            for k in 0..alg.dim() {
                let bk = alg.basis(k);
                rep.check(self.mul(&self.j(&b), &self.j(&bk)) == self.j(&alg.mul(&b, &bk)), "j_multiplicative", [i, k]);
            }
        }
        rep.check(self.j(&alg.unit()) == self.one(), "j_unital", []);
        rep
    }

    // --- tensor square over A ---

    pub fn tensor_zero(&self) -> DualTensor {
        DualTensor { comps: vec![self.alg().zero(); self.g() * self.g()] }
    }

    /// Projects the `(s, t)` coefficient by `e_t e_{ts}`.
    pub fn tensor_normalize(&self, mut x: DualTensor) -> DualTensor {
        let grp = self.pa.group();
        let g = self.g();
        for s in grp.elements() {
            for t in grp.elements() {
                let c = &x.comps[s * g + t];
                x.comps[s * g + t] = self.pa.cut(&self.pa.cut(c, t), grp.mul(t, s));
            }
        }
        x
    }

    /// `(u_s a) (x) (u_t b) -> alpha_t(a e_{t^-1}) b` at `(s, t)`.
    pub fn tensor(&self, x: &DualElement, y: &DualElement) -> DualTensor {
        let g = self.g();
        let mut out = self.tensor_zero();
        for (s, a) in x.comps.iter().enumerate() {
            for (t, b) in y.comps.iter().enumerate() {
                let term = self.alg().mul(&self.pa.alpha(t, a), b);
                out.comps[s * g + t] = self.alg().add(&out.comps[s * g + t], &term);
            }
        }
        self.tensor_normalize(out)
    }

    pub fn tensor_add(&self, x: &DualTensor, y: &DualTensor) -> DualTensor {
        DualTensor { comps: x.comps.iter().zip(&y.comps).map(|(a, b)| self.alg().add(a, b)).collect() }
    }

    pub fn tensor_left_mul(&self, r: &DualElement, x: &DualTensor) -> DualTensor {
        let g = self.g();
        let mut out = self.tensor_zero();
        for (idx, c) in x.comps.iter().enumerate() {
            let (s, t) = (idx / g, idx % g);
            let term = self.tensor(&self.mul(r, &self.u(s)), &self.monomial(t, c));
            out = self.tensor_add(&out, &term);
        }
        out
    }

    pub fn tensor_right_mul(&self, x: &DualTensor, r: &DualElement) -> DualTensor {
        let g = self.g();
        let mut out = self.tensor_zero();
        for (idx, c) in x.comps.iter().enumerate() {
            let (s, t) = (idx / g, idx % g);
            let term = self.tensor(&self.u(s), &self.mul(&self.monomial(t, c), r));
            out = self.tensor_add(&out, &term);
        }
        out
    }

    /// `e = sum_s u_{s^-1} (x) u_s`.
    pub fn casimir(&self) -> DualTensor {
        let grp = self.pa.group();
        let mut out = self.tensor_zero();
        for s in grp.elements() {
            out = self.tensor_add(&out, &self.tensor(&self.u(grp.inv(s)), &self.u(s)));
        }
        out
    }

    /// `nu(sum u_s a_s) = a_1`.
    pub fn nu_bar(&self, x: &DualElement) -> AlgebraElement {
        x.comps[self.pa.group().identity()].clone()
    }

    /// `(nu(e^1) e^2, e^1 nu(e^2))`.
    pub fn casimir_contractions(&self, e: &DualTensor) -> (DualElement, DualElement) {
        let g = self.g();
        let mut left = self.zero();
        let mut right = self.zero();
        for (idx, c) in e.comps.iter().enumerate() {
            let (s, t) = (idx / g, idx % g);
            let e1 = self.u(s);
            let e2 = self.monomial(t, c);
            left = self.add(&left, &self.mul(&self.j(&self.nu_bar(&e1)), &e2));
            right = self.add(&right, &self.mul(&e1, &self.j(&self.nu_bar(&e2))));
        }
        (left, right)
    }

    /// The ring generators `j(b_i)` followed by `u_s e_s`.
    pub fn generators(&self) -> Vec<DualElement> {
        let alg = self.alg();
        let mut out: Vec<DualElement> = (0..alg.dim()).map(|i| self.j(&alg.basis(i))).collect();
        out.extend(self.pa.group().elements().map(|s| self.u(s)));
        out
    }
}

pub fn dual_ring(pa: &PartialAction) -> Result<DualRing> {
    DualRing::new(pa)
}

#[derive(Debug, Clone, Serialize)]
pub struct SkewComparison {
    pub dim: usize,
    pub pairs_checked: usize,
    pub anti_multiplicative: bool,
    pub unital: bool,
    pub bijective: bool,
}

impl SkewComparison {
    pub fn verified(&self) -> bool {
        self.anti_multiplicative && self.unital && self.bijective
    }
}

/// Compares `*C` with the opposite of the partial skew group ring under
/// `u_s a_s -> a_s u_s`. Both live on the same graded basis, so the map is
/// the identity on coordinates and the content is in the two tables.
pub fn dual_vs_skew(pa: &PartialAction) -> Result<SkewComparison> {
    let skew = pa.skew_group_ring()?;
    let dual = DualRing::new(pa)?;
    let d = dual.algebra();
    let n = d.dim();
    let mut anti = true;
    for x in 0..n {
        for y in 0..n {
            anti &= d.basis_product(x, y) == skew.basis_product(y, x);
        }
    }
    Ok(SkewComparison {
        dim: n,
        pairs_checked: n * n,
        anti_multiplicative: anti,
        unital: d.unit() == skew.unit(),
        bijective: n == skew.dim(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FrobeniusReport {
    pub casimir_central: bool,
    pub contractions_unit: bool,
    pub nu_bimodule: bool,
    pub generators_checked: usize,
    pub report: ValidationReport,
}

impl FrobeniusReport {
    pub fn holds(&self) -> bool {
        self.casimir_central && self.contractions_unit && self.nu_bimodule
    }
}

pub fn frobenius_check(pa: &PartialAction) -> Result<FrobeniusReport> {
    let dual = DualRing::new(pa)?;
    Ok(frobenius_check_on(&dual))
}

pub fn frobenius_check_on(dual: &DualRing) -> FrobeniusReport {
    let alg = dual.alg();
    let mut rep = ValidationReport::new();
    let e = dual.casimir();
    let gens = dual.generators();
    for (k, r) in gens.iter().enumerate() {
        rep.check(dual.tensor_left_mul(r, &e) == dual.tensor_right_mul(&e, r), "casimir_central", [k]);
    }
    let (left, right) = dual.casimir_contractions(&e);
    rep.check(left == dual.one(), "contraction_left", []);
    rep.check(right == dual.one(), "contraction_right", []);
    for (x, f) in dual.basis_elements().iter().enumerate() {
        for i in 0..alg.dim() {
            let b = alg.basis(i);
            rep.check(dual.nu_bar(&dual.mul(&dual.j(&b), f)) == alg.mul(&b, &dual.nu_bar(f)), "nu_left_linear", [x, i]);
            rep.check(
                dual.nu_bar(&dual.mul(f, &dual.j(&b))) == alg.mul(&dual.nu_bar(f), &b),
                "nu_right_linear",
                [x, i],
            );
        }
    }
    FrobeniusReport {
        casimir_central: !rep.has("casimir_central"),
        contractions_unit: !rep.has("contraction_left") && !rep.has("contraction_right"),
        nu_bimodule: !rep.has("nu_left_linear") && !rep.has("nu_right_linear"),
        generators_checked: gens.len(),
        report: rep,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StarCanVerdict {
    pub dual_dim: usize,
    pub end_dim: usize,
    pub injective: bool,
    pub image_in_end: bool,
    pub bijective: bool,
}

/// Matrix of `a -> a . f`.
pub fn star_can_matrix(dual: &DualRing, f: &DualElement) -> Matrix {
    let alg = dual.alg();
    let cols: Vec<Vec<u64>> = (0..alg.dim()).map(|i| dual.act_on_algebra(&alg.basis(i), f).into_vec()).collect();
    Matrix::from_columns(alg.field(), alg.dim(), &cols)
}

/// Left `B`-linear endomorphisms of `A`, as row-major flattened matrices.
pub fn left_linear_endomorphisms(alg: &FiniteAlgebra, sub: &Subalgebra) -> Subspace {
    let n = alg.dim();
    let f = alg.field();
    let mut system = Matrix::zeros(f, 0, n * n);
    for b in sub.basis_elements() {
        let l = alg.left_mul_matrix(&b);
        // (phi L - L phi)[r][c] as a linear form in phi[r'][c'].
        for r in 0..n {
            for c in 0..n {
                let mut row = vec![0; n * n];
                for k in 0..n {
                    row[r * n + k] = f.add(row[r * n + k], l[(k, c)]);
                    row[k * n + c] = f.sub(row[k * n + c], l[(r, k)]);
                }
                if row.iter().any(|&x| x != 0) {
                    system.push_row(&row);
                }
            }
        }
    }
    Subspace::span(&system.kernel())
}

pub fn star_can(pa: &PartialAction, sub: &Subalgebra) -> Result<StarCanVerdict> {
    pa.check_invariant_subring(sub)?;
    let dual = DualRing::new(pa)?;
    let end = left_linear_endomorphisms(pa.algebra(), sub);
    let images: Vec<Vec<u64>> = dual.basis_elements().iter().map(|f| star_can_matrix(&dual, f).flatten()).collect();
    let image = Subspace::span_of(pa.field(), end.ambient(), &images);
    let injective = image.dim() == dual.dim();
    let image_in_end = end.contains_subspace(&image);
    Ok(StarCanVerdict {
        dual_dim: dual.dim(),
        end_dim: end.dim(),
        injective,
        image_in_end,
        bijective: injective && image_in_end && image.dim() == end.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn el(v: &[u64]) -> AlgebraElement {
        AlgebraElement::from_vec(v.to_vec())
    }

    #[test]
    fn dual_ring_checks_pass_on_fixtures() {
        for fx in fixtures::all() {
            let d = DualRing::new(&fx.pa).unwrap();
            let rep = d.check();
            assert!(rep.is_ok(), "{}: {rep}", fx.name);
        }
    }

    #[test]
    fn shift_u_sigma_squared_vanishes() {
        let d = DualRing::new(&fixtures::shift()).unwrap();
        let x = d.monomial(1, &[0, 1]);
        assert_eq!(d.mul(&x, &x), d.zero());
    }

    #[test]
    fn global_case_multiplies_group_elements() {
        let pa = fixtures::swap();
        let d = DualRing::new(&pa).unwrap();
        assert_eq!(d.mul(&d.u(1), &d.u(1)), d.u(0));
        assert_eq!(d.mul(&d.u(0), &d.u(1)), d.u(1));
    }

    #[test]
    fn commutation_rule_on_swap() {
        let d = DualRing::new(&fixtures::swap()).unwrap();
        // f1 u_g = u_g alpha_g(f1) = u_g f2
        assert_eq!(d.mul(&d.j(&[1, 0]), &d.u(1)), d.monomial(1, &[0, 1]));
    }

    #[test]
    fn skew_comparison() {
        for fx in fixtures::all() {
            let cmp = dual_vs_skew(&fx.pa).unwrap();
            assert!(cmp.verified(), "{}", fx.name);
        }
        assert_eq!(dual_vs_skew(&fixtures::shift()).unwrap().pairs_checked, 16);
    }

    #[test]
    fn casimir_on_trivial() {
        let d = DualRing::new(&fixtures::trivial()).unwrap();
        assert_eq!(d.casimir(), d.tensor(&d.one(), &d.one()));
        assert_eq!(d.casimir().comps, vec![el(&[1])]);
    }

    #[test]
    fn shift_casimir_times_u_sigma_f2() {
        let d = DualRing::new(&fixtures::shift()).unwrap();
        let r = d.monomial(1, &[0, 1]);
        let e = d.casimir();
        let expected = {
            let a = d.tensor(&d.u(1), &d.monomial(0, &[0, 1]));
            let b = d.tensor(&d.u(0), &d.monomial(1, &[0, 1]));
            d.tensor_add(&a, &b)
        };
        assert_eq!(d.tensor_left_mul(&r, &e), expected);
        assert_eq!(d.tensor_right_mul(&e, &r), expected);
        // coefficients f2 at (s, 1) and (1, s), nothing else
        let g = 3;
        assert_eq!(expected.comps[g], el(&[0, 1]));
        assert_eq!(expected.comps[1], el(&[0, 1]));
        assert_eq!(expected.comps.iter().filter(|c| !c.is_zero()).count(), 2);
    }

    #[test]
    fn frobenius_on_fixtures() {
        for fx in fixtures::all() {
            let rep = frobenius_check(&fx.pa).unwrap();
            assert!(rep.holds(), "{}: {}", fx.name, rep.report);
        }
    }

    #[test]
    fn right_action_agrees_with_coaction() {
        for fx in fixtures::all() {
            let d = DualRing::new(&fx.pa).unwrap();
            for f in d.basis_elements() {
                for a in fx.pa.algebra().basis_elements() {
                    assert_eq!(d.act_on_algebra(&a, &f), d.act_on_algebra_via_coaction(&a, &f));
                }
            }
        }
    }

    #[test]
    fn star_can_verdicts() {
        let shift = fixtures::shift();
        let v = star_can(&shift, &shift.invariants().unwrap()).unwrap();
        assert_eq!((v.dual_dim, v.end_dim), (4, 4));
        assert!(v.bijective);

        let ta = fixtures::trivial_action();
        let v = star_can(&ta, &ta.invariants().unwrap()).unwrap();
        assert_eq!((v.dual_dim, v.end_dim), (4, 2));
        assert!(!v.bijective);

        let triv = fixtures::trivial();
        assert!(star_can(&triv, &triv.invariants().unwrap()).unwrap().bijective);
    }
}
