//! The Morita context `(T, *C, A, Q, tau, mu)` with `Q` stored as `A`,
//! surjectivity of the connecting maps, the progenerator test, and the
//! consistency dashboard tying the Galois conditions together.

use serde::Serialize;

use crate::algebra::{AlgebraElement, FiniteAlgebra, ModuleRep, Side, Subalgebra};
use crate::comodule::probe_suite;
use crate::coring::{canonical_map, Coring};
use crate::dual::{star_can, DualElement, DualRing};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::partial_action::PartialAction;
use crate::report::ValidationReport;

/// `a -> sum_s u_s alpha_s(a e_{s^-1})`.
pub fn q_embed(dual: &DualRing, a: &[u64]) -> DualElement {
    let pa = dual.partial_action();
    dual.element(pa.group().elements().map(|s| pa.alpha(s, a)).collect())
}

/// `c_(1) q(c_(2)) = q(c) x` for `c = v_t`, every `t`.
pub fn q_member(dual: &DualRing, q: &DualElement) -> bool {
    let pa = dual.partial_action();
    let coring = Coring::new(pa.clone());
    let x = coring.grouplike().expect("grouplike");
    pa.group().elements().all(|t| {
        let c = coring.v(t);
        let delta = coring.comultiply(&c);
        let mut lhs = coring.zero();
        for (idx, coeff) in delta.comps.iter().enumerate() {
            let w = coring.word(idx, 2);
            let value = dual.eval(q, &coring.v(w[1]));
            lhs = coring.add(&lhs, &coring.right_act(&coring.monomial(w[0], coeff), &value));
        }
        lhs == coring.left_act(&dual.eval(q, &c), &x)
    })
}

#[derive(Debug, Clone)]
pub struct MoritaContext {
    pub invariants: Subalgebra,
    pub dual: DualRing,
}

impl MoritaContext {
    fn pa(&self) -> &PartialAction {
        self.dual.partial_action()
    }

    fn alg(&self) -> &FiniteAlgebra {
        self.pa().algebra()
    }

    /// `tau(b (x) a) = sum_s alpha_s(b a e_{s^-1})`, `a` standing for `q_embed(a)`.
    pub fn tau(&self, b: &[u64], a: &[u64]) -> AlgebraElement {
        let pa = self.pa();
        let ba = self.alg().mul(b, a);
        pa.group().elements().fold(self.alg().zero(), |acc, s| self.alg().add(&acc, &pa.alpha(s, &ba)))
    }

    /// `tau(b (x) q) = q(x b)`.
    pub fn tau_functional(&self, b: &[u64], a: &[u64]) -> AlgebraElement {
        self.dual.act_on_algebra_via_coaction(b, &q_embed(&self.dual, a))
    }

    /// `mu(a (x) b) = sum_s u_s alpha_s(a e_{s^-1}) b`.
    pub fn mu(&self, a: &[u64], b: &[u64]) -> DualElement {
        let pa = self.pa();
        let comps = pa.group().elements().map(|s| self.alg().mul(&pa.alpha(s, a), b)).collect();
        self.dual.element(comps)
    }

    /// `mu(q (x) b) = q # j(b)`.
    pub fn mu_functional(&self, a: &[u64], b: &[u64]) -> DualElement {
        self.dual.mul(&q_embed(&self.dual, a), &self.dual.j(b))
    }

    /// Left `*C`-action on `Q` transported to `A`: `(u_t a_t) . a = alpha_{t^-1}(a_t a e_t)`.
    pub fn act_on_q(&self, f: &DualElement, a: &[u64]) -> AlgebraElement {
        let pa = self.pa();
        let grp = pa.group();
        f.comps.iter().enumerate().fold(self.alg().zero(), |acc, (t, at)| {
            let inner = pa.cut(&self.alg().mul(at, a), t);
            self.alg().add(&acc, &pa.alpha(grp.inv(t), &inner))
        })
    }

    /// Module axioms for the four actions, the identification of `Q` with
    /// `A`, `tau` landing in `T` and agreeing with the functional formula,
    /// both Morita compatibilities, and balancedness, all on basis tuples.
    pub fn check(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let alg = self.alg();
        let dual = &self.dual;
        let basis: Vec<AlgebraElement> = alg.basis_elements();
        let duals = dual.basis_elements();
        let ts = self.invariants.basis_elements();

        for (i, a) in basis.iter().enumerate() {
            let q = q_embed(dual, a);
            rep.check(q_member(dual, &q), "q_member", [i]);
            rep.check(dual.act_on_algebra(a, &dual.one()) == *a, "right_dual_unit", [i]);
            rep.check(self.act_on_q(&dual.one(), a) == *a, "left_q_unit", [i]);
            for (x, f) in duals.iter().enumerate() {
                rep.check(q_embed(dual, &self.act_on_q(f, a)) == dual.mul(f, &q), "left_q_action", [x, i]);
                for (y, g) in duals.iter().enumerate() {
                    rep.check(
                        dual.act_on_algebra(&dual.act_on_algebra(a, f), g) == dual.act_on_algebra(a, &dual.mul(f, g)),
                        "right_dual_associative",
                        [i, x, y],
                    );
                    rep.check(
                        self.act_on_q(f, &self.act_on_q(g, a)) == self.act_on_q(&dual.mul(f, g), a),
                        "left_q_associative",
                        [x, y, i],
                    );
                }
            }
            for (k, t) in ts.iter().enumerate() {
                rep.check(q_embed(dual, &alg.mul(a, t)) == dual.mul(&q, &dual.j(t)), "right_t_action", [i, k]);
            }
        }

        for (i, b) in basis.iter().enumerate() {
            for (k, a) in basis.iter().enumerate() {
                let t = self.tau(b, a);
                rep.check(self.invariants.contains(&t), "tau_in_invariants", [i, k]);
                rep.check(t == self.tau_functional(b, a), "tau_formula", [i, k]);
                rep.check(self.mu(b, a) == self.mu_functional(b, a), "mu_formula", [i, k]);
                for (l, c) in basis.iter().enumerate() {
                    // tau(a (x) q) a' = a . mu(q (x) a')
                    rep.check(
                        alg.mul(&self.tau(b, a), c) == dual.act_on_algebra(b, &self.mu(a, c)),
                        "compatibility_a",
                        [i, k, l],
                    );
                    // q' tau(a (x) q) = mu(q' (x) a) . q
                    rep.check(
                        alg.mul(b, &self.tau(a, c)) == self.act_on_q(&self.mu(b, a), c),
                        "compatibility_q",
                        [i, k, l],
                    );
                }
                for (x, f) in duals.iter().enumerate() {
                    rep.check(
                        self.tau(&dual.act_on_algebra(b, f), a) == self.tau(b, &self.act_on_q(f, a)),
                        "tau_balanced",
                        [i, x, k],
                    );
                }
                for (m, t) in ts.iter().enumerate() {
                    rep.check(self.mu(&alg.mul(b, t), a) == self.mu(b, &alg.mul(t, a)), "mu_balanced", [i, m, k]);
                }
            }
        }
        rep
    }
}

pub fn morita_context(pa: &PartialAction) -> Result<MoritaContext> {
    let dual = DualRing::new(pa)?;
    Ok(MoritaContext { invariants: pa.invariants()?, dual })
}

/// Solves `sum_s alpha_s(a e_{s^-1}) = 1`.
pub fn tau_surjectivity(pa: &PartialAction) -> Option<AlgebraElement> {
    let n = pa.algebra().dim();
    let total = pa.group().elements().fold(Matrix::zeros(pa.field(), n, n), |acc, s| acc.add(pa.alpha_matrix(s)));
    total.solve(&pa.algebra().unit()).map(AlgebraElement::from_vec)
}

/// The span of all `tau(b (x) a)`.
pub fn tau_image(ctx: &MoritaContext) -> Subspace {
    let alg = ctx.dual.partial_action().algebra();
    let basis = alg.basis_elements();
    let values: Vec<Vec<u64>> =
        basis.iter().flat_map(|b| basis.iter().map(move |a| (b, a))).map(|(b, a)| ctx.tau(b, a).into_vec()).collect();
    Subspace::span_of(alg.field(), alg.dim(), &values)
}

/// The span of all `mu(a (x) b)` against `dim *C`.
pub fn mu_image_dim(ctx: &MoritaContext) -> usize {
    let alg = ctx.dual.partial_action().algebra();
    let basis = alg.basis_elements();
    let values: Vec<Vec<u64>> = basis
        .iter()
        .flat_map(|a| basis.iter().map(move |b| (a, b)))
        .map(|(a, b)| ctx.dual.flatten(&ctx.mu(a, b)))
        .collect();
    Subspace::span_of(alg.field(), ctx.dual.dim(), &values).dim()
}

pub fn mu_surjectivity(pa: &PartialAction) -> Result<bool> {
    let ctx = morita_context(pa)?;
    Ok(mu_image_dim(&ctx) == ctx.dual.dim())
}

#[derive(Debug, Clone, Serialize)]
pub struct ProgeneratorReport {
    pub projective: bool,
    pub generator: bool,
    pub hom_dim: usize,
    pub trace_ideal_dim: usize,
}

impl ProgeneratorReport {
    pub fn progenerator(&self) -> bool {
        self.projective && self.generator
    }
}

/// Projectivity by the dual basis lemma and the generator property by the
/// trace ideal, for a left module `m` over `b`.
pub fn progenerator_check(b: &FiniteAlgebra, m: &ModuleRep) -> Result<ProgeneratorReport> {
    let rep = m.validate(b);
    if !rep.is_ok() || m.side != Side::Left {
        return Err(Error::Invalid { what: "left module", report: rep });
    }
    let f = b.field();
    let k = b.dim();
    let d = m.dim;

    // Hom_B(M, B): k x d matrices h with h act_i = L_{b_i} h.
    let mut system = Matrix::zeros(f, 0, k * d);
    for i in 0..k {
        let l = b.left_mul_matrix(&b.basis(i));
        for r in 0..k {
            for c in 0..d {
                let mut row = vec![0; k * d];
                for j in 0..d {
                    row[r * d + j] = f.add(row[r * d + j], m.act[i][(j, c)]);
                }
                for j in 0..k {
                    row[j * d + c] = f.sub(row[j * d + c], l[(r, j)]);
                }
                if row.iter().any(|&x| x != 0) {
                    system.push_row(&row);
                }
            }
        }
    }
    let hom = system.kernel();
    let homs: Vec<Matrix> = (0..hom.rows())
        .map(|h| Matrix::from_rows(f, d, &hom.row(h).chunks(d).map(|r| r.to_vec()).collect::<Vec<_>>()).expect("k x d"))
        .collect();

    // Trace ideal: span of h(m_j).
    let images: Vec<Vec<u64>> = homs.iter().flat_map(|h| (0..d).map(move |j| h.column(j))).collect();
    let trace = Subspace::span_of(f, k, &images);

    // Dual basis: sum_i f_i(m) m_i = m with f_i = sum_h c_{ih} homs[h].
    let nh = homs.len();
    let mut lhs = Matrix::zeros(f, d * d, d * nh);
    let mut rhs = vec![0; d * d];
    for j in 0..d {
        for r in 0..d {
            rhs[j * d + r] = u64::from(r == j);
        }
        for (h, hm) in homs.iter().enumerate() {
            let act = m.action(f, &hm.column(j));
            for i in 0..d {
                for r in 0..d {
                    lhs[(j * d + r, i * nh + h)] = act[(r, i)];
                }
            }
        }
    }
    let projective = d == 0 || lhs.solve(&rhs).is_some();
    Ok(ProgeneratorReport { projective, generator: trace.dim() == k, hom_dim: nh, trace_ideal_dim: trace.dim() })
}

/// `A` as a left module over `B` by left multiplication.
pub fn progenerator_over_subring(alg: &FiniteAlgebra, sub: &Subalgebra) -> Result<ProgeneratorReport> {
    let b = sub.as_algebra(alg);
    let m = ModuleRep::regular_left(alg).restrict(alg, sub);
    progenerator_check(&b, &m)
}

#[derive(Debug, Clone, Serialize)]
pub struct Dashboard {
    pub can_bijective: bool,
    pub star_can_bijective: bool,
    pub progenerator: bool,
    pub b_is_invariants: bool,
    pub tau_surjective: bool,
    pub mu_surjective: bool,
    pub probes_bijective: bool,
    /// (1a): `can` bijective; faithful flatness is not tested.
    pub cond1a: bool,
    pub cond2: bool,
    pub cond3: bool,
    pub cond4_probe: bool,
    pub consistent: bool,
}

impl Dashboard {
    pub fn ensure_consistent(&self) -> Result<()> {
        if self.consistent {
            Ok(())
        } else {
            Err(Error::Consistency(format!(
                "(1a)={} (2)={} (3)={} (4-probe)={}",
                self.cond1a, self.cond2, self.cond3, self.cond4_probe
            )))
        }
    }
}

/// Computes each condition independently and checks `(2) <=> (3)`,
/// `(2) => (1a)` and `(2) => (4-probe)`.
pub fn theorem_dashboard(pa: &PartialAction, sub: &Subalgebra) -> Result<Dashboard> {
    pa.check_invariant_subring(sub)?;
    let can_bijective = canonical_map(pa, sub)?.bijective;
    let star_can_bijective = star_can(pa, sub)?.bijective;
    let progenerator = progenerator_over_subring(pa.algebra(), sub)?.progenerator();
    let t = pa.invariants()?;
    let b_is_invariants = t.dim() == sub.dim();
    let tau_surjective = tau_surjectivity(pa).is_some();
    let mu_surjective = mu_surjectivity(pa)?;
    let probes_bijective = probe_suite(pa, sub)?.iter().all(|p| p.bijective);

    let cond1a = can_bijective;
    let cond2 = star_can_bijective && progenerator;
    let cond3 = b_is_invariants && tau_surjective && mu_surjective;
    let cond4_probe = b_is_invariants && probes_bijective;
    let consistent = cond2 == cond3 && (!cond2 || cond1a) && (!cond2 || cond4_probe);
    Ok(Dashboard {
        can_bijective,
        star_can_bijective,
        progenerator,
        b_is_invariants,
        tau_surjective,
        mu_surjective,
        probes_bijective,
        cond1a,
        cond2,
        cond3,
        cond4_probe,
        consistent,
    })
}
