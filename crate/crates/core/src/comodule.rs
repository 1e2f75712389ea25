//! Right comodules over the partial-action coring, presented as descent
//! data on finite right A-modules.
//!
//! `M (x)_A C` is identified with `sum_s M e_s`, so a coaction is a family
//! of matrices `M -> M e_s`.

use serde::Serialize;

use crate::algebra::{FiniteAlgebra, ModuleRep, Side, Subalgebra};
use crate::coring::Coring;
use crate::error::{Error, Result};
use crate::linalg::{build_quotient, Matrix, QuotientSpace, Subspace};
use crate::partial_action::PartialAction;
use crate::report::ValidationReport;

/// `maps[s]` is `R_s(m) = rho_s(m e_{s^-1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentDatum {
    pub module: ModuleRep,
    pub maps: Vec<Matrix>,
}

/// `rho(m) = sum_s comps[s](m) (x) v_s`, with `comps[s]` landing in `M e_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coaction {
    pub comps: Vec<Matrix>,
}

fn act(pa: &PartialAction, m: &ModuleRep, a: &[u64]) -> Matrix {
    m.action(pa.field(), a)
}

fn check_shapes(pa: &PartialAction, module: &ModuleRep, maps: &[Matrix]) -> Result<()> {
    let n = pa.algebra().dim();
    let g = pa.group().order();
    if module.side != Side::Right {
        return Err(Error::shape("descent data live on right modules"));
    }
    if module.act.len() != n {
        return Err(Error::shape(format!("module has {} action matrices, algebra dimension is {n}", module.act.len())));
    }
    if maps.len() != g {
        return Err(Error::shape(format!("{} maps for a group of order {g}", maps.len())));
    }
    let d = module.dim;
    if let Some(s) = maps.iter().position(|m| m.shape() != (d, d)) {
        return Err(Error::shape(format!("map {s} is not {d}x{d}")));
    }
    Ok(())
}

impl DescentDatum {
    pub fn new(module: ModuleRep, maps: Vec<Matrix>) -> Self {
        Self { module, maps }
    }

    /// `A` with `R_s = alpha_s`, the comodule structure induced by the grouplike.
    pub fn regular(pa: &PartialAction) -> Self {
        let module = ModuleRep::regular_right(pa.algebra());
        let maps = pa.group().elements().map(|s| pa.alpha_matrix(s).clone()).collect();
        Self { module, maps }
    }

    pub fn dim(&self) -> usize {
        self.module.dim
    }

    pub fn direct_sum(&self, other: &DescentDatum) -> Self {
        let module = self.module.direct_sum(&other.module);
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| {
                let d = module.dim;
                let mut m = Matrix::zeros(a.field(), d, d);
                for r in 0..a.rows() {
                    for c in 0..a.cols() {
                        m[(r, c)] = a[(r, c)];
                    }
                }
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        m[(a.rows() + r, a.cols() + c)] = b[(r, c)];
                    }
                }
                m
            })
            .collect();
        Self { module, maps }
    }

    pub fn validate(&self, pa: &PartialAction) -> Result<ValidationReport> {
        check_shapes(pa, &self.module, &self.maps)?;
        let alg = pa.algebra();
        let grp = pa.group();
        let f = pa.field();
        let d = self.dim();
        let mut rep = self.module.validate(alg);
        if !rep.is_ok() {
            return Ok(rep);
        }
        rep.check(self.maps[grp.identity()] == Matrix::identity(f, d), "identity_map", []);
        for s in grp.elements() {
            let r = &self.maps[s];
            let e_s = act(pa, &self.module, pa.idempotent(s));
            let e_inv = act(pa, &self.module, pa.idempotent(grp.inv(s)));
            rep.check(e_s.mul(r) == *r, "image_in_ideal", [s]);
            rep.check(r.mul(&e_inv) == *r, "kills_complement", [s]);
            rep.check(r.rank() == e_inv.rank() && e_inv.rank() == e_s.rank(), "bijective", [s, r.rank(), e_inv.rank()]);
            for i in 0..alg.dim() {
                let lhs = r.mul(&self.module.act[i]);
                let rhs = act(pa, &self.module, &pa.alpha(s, &alg.basis(i))).mul(r);
                rep.check(lhs == rhs, "right_linear", [s, i]);
            }
        }
        for s in grp.elements() {
            for t in grp.elements() {
                // rho_t(rho_s(m e_{s^-1}) e_{t^-1}) = rho_{ts}(m e_{(ts)^-1}) e_t
                let lhs = self.maps[t].mul(&self.maps[s]);
                let e_t = act(pa, &self.module, pa.idempotent(t));
                let rhs = e_t.mul(&self.maps[grp.mul(t, s)]);
                rep.check(lhs == rhs, "compatibility", [s, t]);
            }
        }
        Ok(rep)
    }
}

pub fn validate_descent_datum(pa: &PartialAction, dd: &DescentDatum) -> Result<ValidationReport> {
    dd.validate(pa)
}

pub fn datum_to_coaction(pa: &PartialAction, dd: &DescentDatum) -> Result<Coaction> {
    let rep = dd.validate(pa)?;
    if !rep.is_ok() {
        return Err(Error::Invalid { what: "descent datum", report: rep });
    }
    let comps = pa.group().elements().map(|s| act(pa, &dd.module, pa.idempotent(s)).mul(&dd.maps[s])).collect();
    Ok(Coaction { comps })
}

/// `rho_s = (M (x) u_s) o rho`, where `u_s` reads off the `v_s` component.
pub fn coaction_to_datum(pa: &PartialAction, module: &ModuleRep, rho: &Coaction) -> Result<DescentDatum> {
    check_shapes(pa, module, &rho.comps)?;
    let maps = pa.group().elements().map(|s| act(pa, module, pa.idempotent(s)).mul(&rho.comps[s])).collect();
    let dd = DescentDatum { module: module.clone(), maps };
    let rep = dd.validate(pa)?;
    if !rep.is_ok() {
        return Err(Error::Invalid { what: "descent datum", report: rep });
    }
    Ok(dd)
}

/// Checks that `rho` is a right A-linear coassociative counital coaction,
/// computing in `M (x)_A C (x)_A C = sum_{s,t} M e_s e_{st}`.
pub fn check_coaction(pa: &PartialAction, module: &ModuleRep, rho: &Coaction) -> Result<ValidationReport> {
    check_shapes(pa, module, &rho.comps)?;
    let alg = pa.algebra();
    let grp = pa.group();
    let f = pa.field();
    let d = module.dim;
    let coring = Coring::new(pa.clone());
    let mut rep = ValidationReport::new();

    for s in grp.elements() {
        let e_s = act(pa, module, pa.idempotent(s));
        rep.check(e_s.mul(&rho.comps[s]) == rho.comps[s], "canonical_form", [s]);
        for i in 0..alg.dim() {
            let lhs = rho.comps[s].mul(&module.act[i]);
            let rhs = act(pa, module, &pa.alpha(s, &alg.basis(i))).mul(&rho.comps[s]);
            rep.check(lhs == rhs, "right_linear", [s, i]);
        }
    }
    rep.check(rho.comps[grp.identity()] == Matrix::identity(f, d), "counit", []);

    // (rho (x) C) rho at word (t, s) is rho_t rho_s; (M (x) Delta) rho at
    // (t, s) is rho_{ts}; both projected by e_t e_{ts}.
    for t in grp.elements() {
        for s in grp.elements() {
            let e = act(pa, module, &coring.word_idempotent(&[t, s]));
            let lhs = e.mul(&rho.comps[t]).mul(&rho.comps[s]);
            let rhs = e.mul(&rho.comps[grp.mul(t, s)]);
            rep.check(lhs == rhs, "coassociativity", [t, s]);
        }
    }
    Ok(rep)
}

/// `M^G = {m : R_s(m) = m e_s for all s}`.
pub fn coinvariants(pa: &PartialAction, dd: &DescentDatum) -> Subspace {
    let d = dd.dim();
    let mut system = Matrix::zeros(pa.field(), 0, d);
    for s in pa.group().elements() {
        let block = dd.maps[s].sub(&act(pa, &dd.module, pa.idempotent(s)));
        system = system.vstack(&block);
    }
    Subspace::span(&system.kernel())
}

/// `N (x)_B A` for a right module `N` over `B`, as a quotient of
/// `N (x)_{F_p} A` (index `k n + l` for `n_k (x) b_l`).
fn balanced_tensor(alg: &FiniteAlgebra, sub: &Subalgebra, n_mod: &ModuleRep) -> Result<QuotientSpace> {
    let n = alg.dim();
    let d = n_mod.dim;
    let f = alg.field();
    let bs = sub.basis_elements();
    if n_mod.act.len() != bs.len() || n_mod.side != Side::Right {
        return Err(Error::shape("N must be a right module over the subring"));
    }
    let mut rel = Matrix::zeros(f, 0, d * n);
    for (bi, b) in bs.iter().enumerate() {
        let nb = &n_mod.act[bi];
        for k in 0..d {
            for l in 0..n {
                let mut row = vec![0; d * n];
                for k2 in 0..d {
                    row[k2 * n + l] = f.add(row[k2 * n + l], nb[(k2, k)]);
                }
                for (l2, &c) in alg.mul(b, &alg.basis(l)).iter().enumerate() {
                    row[k * n + l2] = f.sub(row[k * n + l2], c);
                }
                if row.iter().any(|&c| c != 0) {
                    rel.push_row(&row);
                }
            }
        }
    }
    build_quotient(f, d * n, &rel)
}

/// `I_d (x) m`, acting on the `A` factor of `N (x) A`.
fn on_second_factor(d: usize, m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut out = Matrix::zeros(m.field(), d * n, d * n);
    for k in 0..d {
        for r in 0..n {
            for c in 0..n {
                out[(k * n + r, k * n + c)] = m[(r, c)];
            }
        }
    }
    out
}

/// `F(N) = N (x)_B A` with its descent datum and the quotient presentation.
#[derive(Debug, Clone)]
pub struct Induced {
    pub datum: DescentDatum,
    pub quotient: QuotientSpace,
}

pub fn induce_comodule(pa: &PartialAction, sub: &Subalgebra, n_mod: &ModuleRep) -> Result<Induced> {
    pa.check_invariant_subring(sub)?;
    let alg = pa.algebra();
    let q = balanced_tensor(alg, sub, n_mod)?;
    let d = n_mod.dim;
    let through = |m: &Matrix| q.projection().mul(&on_second_factor(d, m)).mul(q.section());
    let act = (0..alg.dim()).map(|i| through(&alg.right_mul_matrix(&alg.basis(i)))).collect();
    let maps = pa.group().elements().map(|s| through(pa.alpha_matrix(s))).collect();
    let module = ModuleRep::new(q.dim(), Side::Right, act)?;
    Ok(Induced { datum: DescentDatum { module, maps }, quotient: q })
}

/// `C` as a right comodule over itself: `R_s(a v_r) = (a v_{r s^-1}) e_s`.
pub fn coring_as_comodule(pa: &PartialAction) -> DescentDatum {
    let c = Coring::new(pa.clone());
    let alg = pa.algebra();
    let grp = pa.group();
    let f = pa.field();
    let dim = c.dim();
    let basis = c.basis_elements();
    let matrix_of = |op: &dyn Fn(usize, &crate::coring::CoringElement) -> crate::coring::CoringElement| {
        let cols: Vec<Vec<u64>> = basis.iter().map(|(r, x)| c.coordinates(&op(*r, x))).collect();
        Matrix::from_columns(f, dim, &cols)
    };
    let act = (0..alg.dim()).map(|i| matrix_of(&|_, x| c.right_act(x, &alg.basis(i)))).collect();
    let maps = grp
        .elements()
        .map(|s| {
            matrix_of(&|r, x| {
                let moved = c.monomial(grp.mul(r, grp.inv(s)), &x.comps[r]);
                c.right_act(&moved, pa.idempotent(s))
            })
        })
        .collect();
    DescentDatum { module: ModuleRep { dim, side: Side::Right, act }, maps }
}

/// `B` as a right module over itself, on its canonical basis.
pub fn subring_regular(alg: &FiniteAlgebra, sub: &Subalgebra) -> ModuleRep {
    ModuleRep::regular_right(&sub.as_algebra(alg))
}

/// `A` as a right `B`-module by right multiplication.
pub fn algebra_over_subring(alg: &FiniteAlgebra, sub: &Subalgebra) -> ModuleRep {
    ModuleRep::regular_right(alg).restrict(alg, sub)
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeResult {
    /// `nu_N : N -> (N (x)_B A)^G`, in coinvariant coordinates; `None` if
    /// some `n (x) 1` is not coinvariant.
    pub nu: Option<Matrix>,
    pub nu_bijective: bool,
    /// `zeta_M : M^G (x)_B A -> M`.
    pub zeta: Matrix,
    pub zeta_bijective: bool,
}

/// Unit and counit of the `(F, G)` adjunction at `N` and `M`.
pub fn adjunction_probe(
    pa: &PartialAction,
    sub: &Subalgebra,
    n_mod: &ModuleRep,
    m: &DescentDatum,
) -> Result<ProbeResult> {
    let (nu, nu_bijective) = unit_probe(pa, sub, n_mod)?;
    let (zeta, zeta_bijective) = counit_probe(pa, sub, m)?;
    Ok(ProbeResult { nu, nu_bijective, zeta, zeta_bijective })
}

fn unit_probe(pa: &PartialAction, sub: &Subalgebra, n_mod: &ModuleRep) -> Result<(Option<Matrix>, bool)> {
    let alg = pa.algebra();
    let n = alg.dim();
    let induced = induce_comodule(pa, sub, n_mod)?;
    let fixed = coinvariants(pa, &induced.datum);
    let unit = alg.unit();
    let mut cols = Vec::with_capacity(n_mod.dim);
    for k in 0..n_mod.dim {
        let mut amb = vec![0; n_mod.dim * n];
        amb[k * n..(k + 1) * n].copy_from_slice(&unit);
        match fixed.coordinates(&induced.quotient.project(&amb)) {
            Some(c) => cols.push(c),
            None => return Ok((None, false)),
        }
    }
    let nu = Matrix::from_columns(pa.field(), fixed.dim(), &cols);
    let ok = nu.is_invertible();
    Ok((Some(nu), ok))
}

fn counit_probe(pa: &PartialAction, sub: &Subalgebra, m: &DescentDatum) -> Result<(Matrix, bool)> {
    pa.check_invariant_subring(sub)?;
    let alg = pa.algebra();
    let f = pa.field();
    let n = alg.dim();
    let fixed = coinvariants(pa, m);
    let basis = fixed.basis_vectors();
    // M^G as a right B-module.
    let mut b_act = Vec::new();
    for b in sub.basis_elements() {
        let mb = m.module.action(f, &b);
        let cols: Vec<Vec<u64>> = basis
            .iter()
            .map(|w| {
                fixed
                    .coordinates(&mb.mul_vec(w))
                    .ok_or_else(|| Error::Consistency("M^G is not stable under the subring".into()))
            })
            .collect::<Result<_>>()?;
        b_act.push(Matrix::from_columns(f, fixed.dim(), &cols));
    }
    let fixed_mod = ModuleRep::new(fixed.dim(), Side::Right, b_act)?;
    let q = balanced_tensor(alg, sub, &fixed_mod)?;
    let mut amb_cols = Vec::with_capacity(fixed.dim() * n);
    for w in &basis {
        for l in 0..n {
            amb_cols.push(m.module.act[l].mul_vec(w));
        }
    }
    let zeta = Matrix::from_columns(f, m.dim(), &amb_cols).mul(q.section());
    let ok = zeta.is_invertible();
    Ok((zeta, ok))
}

/// One named probe.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeOutcome {
    pub name: &'static str,
    pub bijective: bool,
}

/// `nu_N` for `N` in `{B, B^2, A}` and `zeta_M` for `M` in `{A, C, F(B^2)}`.
pub fn probe_suite(pa: &PartialAction, sub: &Subalgebra) -> Result<Vec<ProbeOutcome>> {
    let alg = pa.algebra();
    let b = subring_regular(alg, sub);
    let b2 = b.direct_sum(&b);
    let mut out = Vec::new();
    for (name, module) in [("nu_B", &b), ("nu_B2", &b2), ("nu_A", &algebra_over_subring(alg, sub))] {
        out.push(ProbeOutcome { name, bijective: unit_probe(pa, sub, module)?.1 });
    }
    let fb2 = induce_comodule(pa, sub, &b2)?.datum;
    let comodules = [("zeta_A", DescentDatum::regular(pa)), ("zeta_C", coring_as_comodule(pa)), ("zeta_FB2", fb2)];
    for (name, m) in comodules {
        out.push(ProbeOutcome { name, bijective: counit_probe(pa, sub, &m)?.1 });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn pass(pa: &PartialAction, dd: &DescentDatum) -> bool {
        dd.validate(pa).unwrap().is_ok()
    }

    #[test]
    fn regular_datum_validates_on_fixtures() {
        for fx in fixtures::all() {
            let dd = DescentDatum::regular(&fx.pa);
            let rep = dd.validate(&fx.pa).unwrap();
            assert!(rep.is_ok(), "{}: {rep}", fx.name);
        }
    }

    #[test]
    fn zero_map_breaks_bijectivity() {
        let pa = fixtures::swap();
        let mut dd = DescentDatum::regular(&pa);
        dd.maps[1] = Matrix::zeros(pa.field(), 2, 2);
        assert!(dd.validate(&pa).unwrap().has("bijective"));
    }

    #[test]
    fn wrong_map_count_is_a_shape_error() {
        let pa = fixtures::swap();
        let mut dd = DescentDatum::regular(&pa);
        dd.maps.pop();
        assert!(matches!(dd.validate(&pa), Err(Error::Shape(_))));
    }

    #[test]
    fn round_trips() {
        for fx in fixtures::all() {
            let dd = DescentDatum::regular(&fx.pa);
            let rho = datum_to_coaction(&fx.pa, &dd).unwrap();
            assert!(check_coaction(&fx.pa, &dd.module, &rho).unwrap().is_ok(), "{}", fx.name);
            let back = coaction_to_datum(&fx.pa, &dd.module, &rho).unwrap();
            assert_eq!(back, dd);
            assert_eq!(datum_to_coaction(&fx.pa, &back).unwrap(), rho);
        }
    }

    #[test]
    fn shift_regular_coaction_of_f1() {
        let pa = fixtures::shift();
        let rho = datum_to_coaction(&pa, &DescentDatum::regular(&pa)).unwrap();
        assert_eq!(rho.comps[0].mul_vec(&[1, 0]), vec![1, 0]);
        assert_eq!(rho.comps[1].mul_vec(&[1, 0]), vec![0, 1]);
        assert_eq!(rho.comps[2].mul_vec(&[1, 0]), vec![0, 0]);
    }

    #[test]
    fn coinvariants_match_invariants() {
        for fx in fixtures::all() {
            let fixed = coinvariants(&fx.pa, &DescentDatum::regular(&fx.pa));
            assert_eq!(&fixed, fx.pa.invariants().unwrap().space(), "{}", fx.name);
        }
        let fixed = coinvariants(&fixtures::swap(), &DescentDatum::regular(&fixtures::swap()));
        assert_eq!(fixed.basis_vectors(), vec![vec![1, 1]]);
    }

    #[test]
    fn trivial_group_fixes_everything() {
        let pa = fixtures::trivial();
        assert_eq!(coinvariants(&pa, &DescentDatum::regular(&pa)).dim(), 1);
    }

    #[test]
    fn induced_from_b_is_regular() {
        for fx in fixtures::all() {
            let t = fx.pa.invariants().unwrap();
            let alg = fx.pa.algebra();
            let ind = induce_comodule(&fx.pa, &t, &subring_regular(alg, &t)).unwrap();
            assert_eq!(ind.datum.dim(), alg.dim(), "{}", fx.name);
            assert!(pass(&fx.pa, &ind.datum));
        }
    }

    #[test]
    fn induced_dimensions() {
        let swap = fixtures::swap();
        let t = swap.invariants().unwrap();
        let ind = induce_comodule(&swap, &t, &subring_regular(swap.algebra(), &t)).unwrap();
        assert_eq!(ind.datum.dim(), 2);

        let shift = fixtures::shift();
        let t = shift.invariants().unwrap();
        let b = subring_regular(shift.algebra(), &t);
        let ind = induce_comodule(&shift, &t, &b.direct_sum(&b)).unwrap();
        assert_eq!(ind.datum.dim(), 4);
        assert!(pass(&shift, &ind.datum));
        let twice = DescentDatum::regular(&shift).direct_sum(&DescentDatum::regular(&shift));
        assert_eq!(ind.datum, twice);
    }

    #[test]
    fn coring_is_a_comodule_over_itself() {
        for fx in fixtures::all() {
            let dd = coring_as_comodule(&fx.pa);
            let rep = dd.validate(&fx.pa).unwrap();
            assert!(rep.is_ok(), "{}: {rep}", fx.name);
        }
    }

    #[test]
    fn inverse_restriction_property() {
        // R_{s^-1} R_s = multiplication by e_{s^-1}
        for fx in fixtures::all() {
            let dd = DescentDatum::regular(&fx.pa);
            let grp = fx.pa.group();
            for s in grp.elements() {
                let e = dd.module.action(fx.pa.field(), fx.pa.idempotent(grp.inv(s)));
                assert_eq!(dd.maps[grp.inv(s)].mul(&dd.maps[s]), e);
            }
        }
    }

    #[test]
    fn probes_on_galois_fixtures() {
        for fx in fixtures::all() {
            let t = fx.pa.invariants().unwrap();
            let probes = probe_suite(&fx.pa, &t).unwrap();
            let all = probes.iter().all(|p| p.bijective);
            if fx.name == "trivact" {
                assert!(!all);
                assert!(!probes.iter().find(|p| p.name == "zeta_C").unwrap().bijective);
            } else {
                assert!(all, "{}: {probes:?}", fx.name);
            }
        }
    }

    #[test]
    fn zeta_on_regular_is_bijective_everywhere() {
        for fx in fixtures::all() {
            let t = fx.pa.invariants().unwrap();
            let n = subring_regular(fx.pa.algebra(), &t);
            let probe = adjunction_probe(&fx.pa, &t, &n, &DescentDatum::regular(&fx.pa)).unwrap();
            assert!(probe.zeta_bijective, "{}", fx.name);
        }
    }
}
