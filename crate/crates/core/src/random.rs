//! Seeded generator of small restricted global actions and of mutants that
//! break the compatibility condition of a partial action.
//!
//! The ambient algebra is `F_p^X`, optionally times `M_2(F_p)`, where `X` is
//! a disjoint union of coset spaces `G/H`; `G` permutes `X` and acts on the
//! matrix factor by conjugation with `[[0,1],[1,0]]` through a homomorphism
//! `G -> Z/2`. Every central idempotent is a 0/1 vector on `X` plus an
//! optional identity on the matrix block.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::FiniteAlgebra;
use crate::field::Fp;
use crate::group::FiniteGroup;
use crate::linalg::Matrix;
use crate::partial_action::{GlobalActionInstance, PartialAction};

pub const PRIMES: [u64; 3] = [2, 3, 5];
pub const MAX_DIM: usize = 6;

#[derive(Debug, Clone)]
pub struct RandomInstance {
    pub global: GlobalActionInstance,
    pub idempotent: Vec<u64>,
    pub pa: PartialAction,
}

fn random_group(rng: &mut ChaCha8Rng) -> FiniteGroup {
    match rng.random_range(0..5) {
        0 => FiniteGroup::trivial(),
        1 => FiniteGroup::cyclic(2),
        2 => FiniteGroup::cyclic(3),
        3 => FiniteGroup::cyclic(4),
        _ => FiniteGroup::klein_four(),
    }
}

/// Left cosets of `h` and the permutation `g -> (x -> g x)` they carry.
fn coset_action(grp: &FiniteGroup, h: &[usize]) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; grp.order()];
    let mut reps = Vec::new();
    for g in grp.elements() {
        if label[g] == usize::MAX {
            for &k in h {
                label[grp.mul(g, k)] = reps.len();
            }
            reps.push(g);
        }
    }
    grp.elements().map(|g| reps.iter().map(|&r| label[grp.mul(g, r)]).collect()).collect()
}

/// A `G`-set of size at most `max`, as one permutation per group element.
fn random_gset(rng: &mut ChaCha8Rng, grp: &FiniteGroup, max: usize) -> Vec<Vec<usize>> {
    let subgroups: Vec<Vec<usize>> = grp.subgroups().into_iter().filter(|h| grp.order() / h.len() <= max).collect();
    let mut perms: Vec<Vec<usize>> = vec![Vec::new(); grp.order()];
    let orbits = rng.random_range(1..=3);
    for _ in 0..orbits {
        let size: usize = perms[0].len();
        let fitting: Vec<&Vec<usize>> = subgroups.iter().filter(|h| size + grp.order() / h.len() <= max).collect();
        let Some(h) = fitting.choose(rng) else { break };
        let action = coset_action(grp, h);
        for g in grp.elements() {
            perms[g].extend(action[g].iter().map(|x| x + size));
        }
    }
    perms
}

/// Sign of each element under a random homomorphism to `Z/2`.
fn random_sign(rng: &mut ChaCha8Rng, grp: &FiniteGroup) -> Vec<bool> {
    let index_two: Vec<Vec<usize>> = grp.subgroups().into_iter().filter(|h| 2 * h.len() == grp.order()).collect();
    match index_two.choose(rng) {
        Some(h) if rng.random_bool(0.7) => grp.elements().map(|g| !h.contains(&g)).collect(),
        _ => vec![false; grp.order()],
    }
}

pub fn random_global(rng: &mut ChaCha8Rng) -> (GlobalActionInstance, usize, bool) {
    let p = *PRIMES.choose(rng).expect("nonempty");
    let f = Fp::new(p).expect("prime");
    let grp = random_group(rng);
    let with_matrix = rng.random_bool(0.25);
    let max_x = if with_matrix { MAX_DIM - 4 } else { MAX_DIM };
    let perms = random_gset(rng, &grp, max_x);
    let x = perms[0].len();
    let sign = random_sign(rng, &grp);

    let mut alg = FiniteAlgebra::split_semisimple(f, x);
    if with_matrix {
        alg = alg.direct_product(&FiniteAlgebra::matrix_algebra(f, 2));
    }
    let n = alg.dim();
    let auto = grp
        .elements()
        .map(|g| {
            let mut m = Matrix::zeros(f, n, n);
            for i in 0..x {
                m[(perms[g][i], i)] = 1;
            }
            if with_matrix {
                for r in 0..2 {
                    for c in 0..2 {
                        let (r2, c2) = if sign[g] { (1 - r, 1 - c) } else { (r, c) };
                        m[(x + r2 * 2 + c2, x + r * 2 + c)] = 1;
                    }
                }
            }
            m
        })
        .collect();
    let ga = GlobalActionInstance::new(alg, grp, auto).expect("well formed");
    (ga, x, with_matrix)
}

pub fn random_instance(rng: &mut ChaCha8Rng) -> RandomInstance {
    let (global, x, with_matrix) = random_global(rng);
    let n = global.amb.dim();
    loop {
        let mut e = vec![0; n];
        for slot in e.iter_mut().take(x) {
            *slot = u64::from(rng.random_bool(0.75));
        }
        if with_matrix && rng.random_bool(0.6) {
            e[x] = 1;
            e[x + 3] = 1;
        }
        if e.iter().all(|&c| c == 0) {
            continue;
        }
        let (_, pa) = global.restrict(&e).expect("restriction of a valid global action");
        return RandomInstance { global, idempotent: e, pa };
    }
}

/// `count` restricted instances from one seed.
pub fn corpus(seed: u64, count: usize) -> Vec<RandomInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_instance(&mut rng)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutationKind {
    Swap,
    Scale,
    Flip,
}

#[derive(Debug, Clone)]
pub struct Mutant {
    pub kind: MutationKind,
    pub sigma: usize,
    pub pa: PartialAction,
}

fn mutate(rng: &mut ChaCha8Rng, pa: &PartialAction) -> Option<Mutant> {
    let grp = pa.group();
    if grp.order() < 2 {
        return None;
    }
    let f = pa.field();
    let n = pa.algebra().dim();
    let s = rng.random_range(1..grp.order());
    let kind = match rng.random_range(0..3) {
        0 if grp.order() > 2 => MutationKind::Swap,
        1 if f.modulus() > 2 => MutationKind::Scale,
        _ => MutationKind::Flip,
    };
    let out = match kind {
        MutationKind::Swap => {
            let mut t = rng.random_range(1..grp.order());
            if t == s {
                t = if t + 1 < grp.order() { t + 1 } else { 1 };
            }
            pa.with_map(s, pa.map(t).clone()).ok()?.with_map(t, pa.map(s).clone()).ok()?
        }
        MutationKind::Scale => {
            let c = rng.random_range(2..f.modulus());
            pa.with_map(s, pa.map(s).scale(c)).ok()?
        }
        MutationKind::Flip => {
            let mut m = pa.map(s).clone();
            let (r, c) = (rng.random_range(0..n), rng.random_range(0..n));
            m[(r, c)] = f.add(m[(r, c)], 1);
            pa.with_map(s, m).ok()?
        }
    };
    Some(Mutant { kind, sigma: s, pa: out })
}

/// A mutant counts when every `alpha_s` is still a map `A e_{s^-1} -> A e_s`
/// and the compatibility condition fails.
pub fn breaks_only_compatibility(pa: &PartialAction) -> bool {
    let rep = pa.validate();
    rep.has("compatibility") && !rep.has("image_in_ideal") && !rep.has("kills_complement")
}

/// `count` mutants of random restricted instances, see [`breaks_only_compatibility`].
pub fn mutants(seed: u64, count: usize) -> Vec<Mutant> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let base = random_instance(&mut rng);
        for _ in 0..4 {
            if let Some(m) = mutate(&mut rng, &base.pa) {
                if breaks_only_compatibility(&m.pa) {
                    out.push(m);
                    break;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid_and_within_bounds() {
        for inst in corpus(7, 40) {
            assert!(inst.pa.validate().is_ok());
            assert!(inst.global.amb.dim() <= MAX_DIM);
            assert!(inst.pa.group().order() <= 4);
            assert!(PRIMES.contains(&inst.pa.field().modulus()));
        }
    }

    #[test]
    fn corpus_is_reproducible() {
        let a: Vec<_> = corpus(3, 10).into_iter().map(|i| i.pa).collect();
        let b: Vec<_> = corpus(3, 10).into_iter().map(|i| i.pa).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn corpus_contains_proper_partial_actions() {
        assert!(corpus(11, 40).iter().any(|i| !i.pa.is_global()));
    }

    #[test]
    fn mutants_break_compatibility() {
        for m in mutants(5, 10) {
            assert!(breaks_only_compatibility(&m.pa));
        }
    }

    #[test]
    fn coset_action_is_transitive() {
        let g = FiniteGroup::cyclic(4);
        let act = coset_action(&g, &[0, 2]);
        assert_eq!(act[1], vec![1, 0]);
        assert_eq!(act[2], vec![0, 1]);
    }
}
