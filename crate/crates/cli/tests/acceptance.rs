//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact over F_p. Seeds and corpus sizes are pinned
//! below; each criterion runs well under ten seconds with the test profile.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command as Process;
use std::time::Instant;

use pgalois::algebra::AlgebraElement;
use pgalois::comodule::{
    check_coaction, coaction_to_datum, coinvariants, coring_as_comodule, datum_to_coaction, induce_comodule,
    probe_suite, subring_regular, DescentDatum,
};
use pgalois::coring::{canonical_map, Coring};
use pgalois::dual::{dual_vs_skew, frobenius_check, DualRing, DualTensor};
use pgalois::fixtures;
use pgalois::morita::{morita_context, tau_image, tau_surjectivity, theorem_dashboard};
use pgalois::partial_action::PartialAction;
use pgalois::random::{corpus, mutants};

const CORPUS_SEED: u64 = 17;
const CORPUS_SIZE: usize = 100;
const MUTANT_SEED: u64 = 29;
const MUTANT_COUNT: usize = 100;
const DASHBOARD_SEED: u64 = 41;
const DASHBOARD_SIZE: usize = 200;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Fixtures followed by the pinned random corpus.
fn instances(seed: u64, count: usize) -> Vec<(String, PartialAction)> {
    let mut out: Vec<(String, PartialAction)> =
        fixtures::all().into_iter().map(|f| (f.name.to_string(), f.pa)).collect();
    for (k, inst) in corpus(seed, count).into_iter().enumerate() {
        out.push((format!("random#{k}"), inst.pa));
    }
    out
}

/// Independent reference computations, written directly against structure
/// constants and raw alpha matrices.
mod oracle {
    use pgalois::partial_action::PartialAction;

    pub fn rank(p: u64, mut rows: Vec<Vec<u64>>) -> usize {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, piv);
            let inv = (1..p).find(|&x| rows[r][c] * x % p == 1).unwrap();
            let pivot: Vec<u64> = rows[r].iter().map(|v| v * inv % p).collect();
            for (i, row) in rows.iter_mut().enumerate() {
                let f = row[c];
                if i != r && f != 0 {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x = (*x + p - f * y % p) % p;
                    }
                }
            }
            rows[r] = pivot;
            r += 1;
        }
        r
    }

    pub fn mul(pa: &PartialAction, x: &[u64], y: &[u64]) -> Vec<u64> {
        let a = pa.algebra();
        let p = a.p();
        let mut out = vec![0; a.dim()];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                let c = xi * yj % p;
                if c == 0 {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o = (*o + c * a.sc(i, j, k)) % p;
                }
            }
        }
        out
    }

    pub fn apply(pa: &PartialAction, s: usize, x: &[u64]) -> Vec<u64> {
        let m = pa.map(s);
        let p = pa.algebra().p();
        (0..x.len()).map(|r| (0..x.len()).map(|c| m[(r, c)] * x[c]).sum::<u64>() % p).collect()
    }

    fn basis(n: usize, i: usize) -> Vec<u64> {
        (0..n).map(|k| u64::from(k == i)).collect()
    }

    /// `alpha_s(x e_{s^-1})`.
    pub fn alpha(pa: &PartialAction, s: usize, x: &[u64]) -> Vec<u64> {
        let inv = pa.group().inv(s);
        apply(pa, s, &mul(pa, x, pa.idempotent(inv)))
    }

    /// `x` with `alpha_s(x e_{s^-1}) = x e_s` for every `s`, by enumeration.
    pub fn invariant_count(pa: &PartialAction) -> Option<usize> {
        let n = pa.algebra().dim();
        let p = pa.algebra().p();
        let total = (p as usize).checked_pow(n as u32).filter(|&t| t <= 1 << 14)?;
        let mut count = 0;
        for code in 0..total {
            let mut x = vec![0; n];
            let mut c = code;
            for v in x.iter_mut() {
                *v = (c % p as usize) as u64;
                c /= p as usize;
            }
            if pa.group().elements().all(|s| alpha(pa, s, &x) == mul(pa, &x, pa.idempotent(s))) {
                count += 1;
            }
        }
        Some(count)
    }

    /// `(dim A (x)_B A, dim C, rank of can)` for `B` spanned by `sub`.
    pub fn galois_dims(pa: &PartialAction, sub: &[Vec<u64>]) -> (usize, usize, usize) {
        let a = pa.algebra();
        let (n, p) = (a.dim(), a.p());
        let g = pa.group().order();
        let mut relations = Vec::new();
        for t in sub {
            for i in 0..n {
                for j in 0..n {
                    let mut row = vec![0; n * n];
                    let it = mul(pa, &basis(n, i), t);
                    let tj = mul(pa, t, &basis(n, j));
                    for k in 0..n {
                        row[k * n + j] = (row[k * n + j] + it[k]) % p;
                        row[i * n + k] = (row[i * n + k] + p - tj[k]) % p;
                    }
                    relations.push(row);
                }
            }
        }
        let tensor_dim = n * n - rank(p, relations);
        let coring_dim: usize =
            (0..g).map(|s| rank(p, (0..n).map(|k| mul(pa, &basis(n, k), pa.idempotent(s))).collect())).sum();
        let images: Vec<Vec<u64>> = (0..n * n)
            .map(|ij| (0..g).flat_map(|s| mul(pa, &basis(n, ij / n), &alpha(pa, s, &basis(n, ij % n)))).collect())
            .collect();
        (tensor_dim, coring_dim, rank(p, images))
    }
}

fn criterion_1() -> Outcome {
    let all = instances(CORPUS_SEED, CORPUS_SIZE);
    for (name, pa) in &all {
        let rep = pa.validate();
        ensure(rep.is_ok(), || format!("{name}: partial action invalid: {rep}"))?;
        let axioms = Coring::new(pa.clone()).check_axioms();
        ensure(axioms.is_ok(), || format!("{name}: {axioms}"))?;
    }
    let ms = mutants(MUTANT_SEED, MUTANT_COUNT);
    for (k, m) in ms.iter().enumerate() {
        let rep = m.pa.validate();
        let witness = rep.first("compatibility").map(|v| v.witness.clone());
        ensure(witness.is_some_and(|w| w.len() == 3), || format!("mutant {k}: no compatibility witness"))?;
        let axioms = Coring::new(m.pa.clone()).check_axioms();
        let w = axioms.first("delta_right_linear").map(|v| v.witness.clone());
        ensure(w.is_some_and(|w| w.len() == 3), || format!("mutant {k} ({:?}): delta right-linear", m.kind))?;
    }
    Ok(format!("{} valid instances pass, {} mutants fail both checks", all.len(), ms.len()))
}

fn criterion_2() -> Outcome {
    let all = instances(CORPUS_SEED, CORPUS_SIZE);
    for (name, pa) in &all {
        let c = Coring::new(pa.clone());
        let x = c.grouplike().map_err(|e| format!("{name}: {e}"))?;
        let mut expected = c.zero();
        for s in pa.group().elements() {
            expected = c.add(&expected, &c.monomial(s, &pa.algebra().unit()));
        }
        ensure(x == expected, || format!("{name}: x is not the sum of v_s"))?;
        ensure(c.comultiply(&x) == c.tensor(&x, &x), || format!("{name}: Delta(x) != x (x) x"))?;
        ensure(c.counit(&x) == pa.algebra().unit(), || format!("{name}: epsilon(x) != 1"))?;
    }
    Ok(format!("{} instances", all.len()))
}

fn criterion_3() -> Outcome {
    let expected = [("shift", true), ("swap", true), ("trivact", false), ("null", true), ("triv", true)];
    for (name, galois) in expected {
        let pa = fixtures::by_name(name).unwrap();
        let t = pa.invariants().map_err(|e| e.to_string())?;
        let v = canonical_map(&pa, &t).map_err(|e| e.to_string())?;
        ensure(v.bijective == galois, || format!("{name}: bijective = {}", v.bijective))?;
        ensure(v.well_defined && v.coring_morphism_ok, || format!("{name}: can is not a coring morphism"))?;
        if matches!(name, "shift" | "swap") {
            ensure(v.can_matrix.shape() == (4, 4), || format!("{name}: can is {:?}", v.can_matrix.shape()))?;
        }
        let (td, cd, r) = oracle::galois_dims(&pa, &t.space().basis_vectors());
        ensure((td == cd && r == cd) == galois, || format!("{name}: oracle dims {td} {cd} {r}"))?;
    }
    let mut agree = 0;
    for inst in corpus(CORPUS_SEED, CORPUS_SIZE) {
        let t = inst.pa.invariants().map_err(|e| e.to_string())?;
        let v = canonical_map(&inst.pa, &t).map_err(|e| e.to_string())?;
        let (td, cd, r) = oracle::galois_dims(&inst.pa, &t.space().basis_vectors());
        ensure(v.dims == (td, cd), || format!("dims {:?} vs oracle ({td}, {cd})", v.dims))?;
        ensure(v.bijective == (td == cd && r == cd), || "bijectivity differs from oracle".to_string())?;
        agree += 1;
    }
    Ok(format!("five fixtures certified, {agree} random verdicts match the oracle"))
}

fn criterion_4() -> Outcome {
    let all = instances(CORPUS_SEED, CORPUS_SIZE);
    let mut commutative = 0;
    for (name, pa) in &all {
        let dual = DualRing::new(pa).map_err(|e| format!("{name}: {e}"))?;
        let rep = dual.check();
        ensure(rep.is_ok(), || format!("{name}: {rep}"))?;
        if pa.algebra().is_commutative() {
            let cmp = dual_vs_skew(pa).map_err(|e| e.to_string())?;
            ensure(cmp.verified() && cmp.pairs_checked == dual.dim().pow(2), || format!("{name}: {cmp:?}"))?;
            commutative += 1;
        }
    }
    Ok(format!("{} instances, {commutative} compared with the opposite skew ring", all.len()))
}

fn criterion_5() -> Outcome {
    let all = instances(CORPUS_SEED, CORPUS_SIZE);
    for (name, pa) in &all {
        let f = frobenius_check(pa).map_err(|e| e.to_string())?;
        ensure(f.holds(), || format!("{name}: {}", f.report))?;
        let gens = pa.algebra().dim() + pa.group().order();
        ensure(f.generators_checked == gens, || format!("{name}: {} generators", f.generators_checked))?;
    }
    let d = DualRing::new(&fixtures::shift()).map_err(|e| e.to_string())?;
    let alg = fixtures::shift().algebra().clone();
    let f2 = alg.element(&[0, 1]).map_err(|e| e.to_string())?;
    // index s * 3 + t with s = sigma = 1: (sigma, 1) -> 3 and (1, sigma) -> 1
    let mut comps: Vec<AlgebraElement> = vec![alg.zero(); 9];
    comps[3] = f2.clone();
    comps[1] = f2;
    let expected = DualTensor { comps };
    let r = d.monomial(1, &[0, 1]);
    let e = d.casimir();
    ensure(d.tensor_left_mul(&r, &e) == expected, || "r e differs".to_string())?;
    ensure(d.tensor_right_mul(&e, &r) == expected, || "e r differs".to_string())?;
    Ok(format!("{} instances, hand-worked shift case exact", all.len()))
}

fn criterion_6() -> Outcome {
    let all = instances(CORPUS_SEED, CORPUS_SIZE);
    let mut strict = 0;
    for (name, pa) in &all {
        let ctx = morita_context(pa).map_err(|e| e.to_string())?;
        let rep = ctx.check();
        ensure(rep.is_ok(), || format!("{name}: {rep}"))?;
        let witness = tau_surjectivity(pa);
        if let Some(a) = &witness {
            ensure(ctx.tau(&pa.algebra().unit(), a) == pa.algebra().unit(), || format!("{name}: bad witness"))?;
        }
        let spans = tau_image(&ctx) == *ctx.invariants.space();
        ensure(witness.is_some() == spans, || format!("{name}: witness {} vs span {spans}", witness.is_some()))?;
        strict += usize::from(spans);
    }
    let shift = tau_surjectivity(&fixtures::shift()).map(|a| a.coeffs().to_vec());
    ensure(shift == Some(vec![1, 0]), || format!("shift witness {shift:?}"))?;
    ensure(tau_surjectivity(&fixtures::trivial_action()).is_none(), || "trivact has a witness".to_string())?;
    Ok(format!("{} instances, {strict} with surjective tau", all.len()))
}

fn criterion_7() -> Outcome {
    let all = instances(DASHBOARD_SEED, DASHBOARD_SIZE);
    let (mut galois, mut other) = (0, 0);
    for (name, pa) in &all {
        let t = pa.invariants().map_err(|e| e.to_string())?;
        let d = theorem_dashboard(pa, &t).map_err(|e| e.to_string())?;
        d.ensure_consistent().map_err(|e| format!("{name}: {e}"))?;
        if d.cond2 {
            galois += 1;
        } else {
            other += 1;
        }
    }
    ensure(galois > 0 && other > 0, || format!("corpus lacks variety: {galois} / {other}"))?;
    Ok(format!("{} instances, {galois} Galois, {other} not, 0 inconsistencies", all.len()))
}

fn criterion_8() -> Outcome {
    let all = instances(CORPUS_SEED, CORPUS_SIZE);
    let mut enumerated = 0;
    for (name, pa) in &all {
        let t = pa.invariants().map_err(|e| e.to_string())?;
        let b2 = subring_regular(pa.algebra(), &t);
        let b2 = b2.direct_sum(&b2);
        let induced = induce_comodule(pa, &t, &b2).map_err(|e| e.to_string())?.datum;
        for dd in [DescentDatum::regular(pa), coring_as_comodule(pa), induced] {
            let rep = dd.validate(pa).map_err(|e| e.to_string())?;
            ensure(rep.is_ok(), || format!("{name}: datum invalid: {rep}"))?;
            let rho = datum_to_coaction(pa, &dd).map_err(|e| e.to_string())?;
            let crep = check_coaction(pa, &dd.module, &rho).map_err(|e| e.to_string())?;
            ensure(crep.is_ok(), || format!("{name}: coaction invalid: {crep}"))?;
            let back = coaction_to_datum(pa, &dd.module, &rho).map_err(|e| e.to_string())?;
            ensure(back == dd, || format!("{name}: round trip moved the datum"))?;
            let again = datum_to_coaction(pa, &back).map_err(|e| e.to_string())?;
            ensure(again == rho, || format!("{name}: round trip moved the coaction"))?;
        }
        let co = coinvariants(pa, &DescentDatum::regular(pa));
        ensure(co == *t.space(), || format!("{name}: coinvariants differ from invariants"))?;
        if let Some(count) = oracle::invariant_count(pa) {
            let p = pa.algebra().p() as usize;
            ensure(count == p.pow(t.dim() as u32), || format!("{name}: {count} invariants by enumeration"))?;
            enumerated += 1;
        }
    }
    for name in ["shift", "swap", "null", "triv"] {
        let pa = fixtures::by_name(name).unwrap();
        let t = pa.invariants().map_err(|e| e.to_string())?;
        let probes = probe_suite(&pa, &t).map_err(|e| e.to_string())?;
        let failed: Vec<_> = probes.iter().filter(|p| !p.bijective).map(|p| p.name).collect();
        ensure(failed.is_empty(), || format!("{name}: probes {failed:?} not bijective"))?;
    }
    let pa = fixtures::trivial_action();
    let t = pa.invariants().map_err(|e| e.to_string())?;
    let probes = probe_suite(&pa, &t).map_err(|e| e.to_string())?;
    ensure(probes.iter().any(|p| !p.bijective), || "trivact passes every probe".to_string())?;
    Ok(format!("{} instances, {enumerated} invariant rings enumerated", all.len()))
}

fn pgalois(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Process::new(env!("CARGO_BIN_EXE_pgalois")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn read_dir_sorted(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| (p.file_name().unwrap().into(), std::fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

fn criterion_9() -> Outcome {
    let tmp = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance-determinism");
    let _ = std::fs::remove_dir_all(&tmp);
    let (one, two) = (tmp.join("one"), tmp.join("two"));
    for dir in [&one, &two] {
        let (code, _) = pgalois(&["fixtures", dir.to_str().unwrap()]);
        ensure(code == 0, || format!("fixtures exited {code}"))?;
    }
    ensure(read_dir_sorted(&one) == read_dir_sorted(&two), || "fixture files differ".to_string())?;
    let mut runs = 0;
    for name in fixtures::NAMES {
        let file = one.join(format!("{name}.json"));
        let file = file.to_str().unwrap();
        for cmd in ["validate", "galois", "dual", "frobenius", "morita", "dashboard"] {
            let (c1, o1) = pgalois(&[cmd, file]);
            let (c2, o2) = pgalois(&[cmd, file]);
            ensure(c1 == c2 && c1 != 2, || format!("{cmd} {name}: exit {c1} then {c2}"))?;
            ensure(o1 == o2 && !o1.is_empty(), || format!("{cmd} {name}: output differs"))?;
            runs += 1;
        }
    }
    let global = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/shift-global.json");
    let (_, g1) = pgalois(&["generate", global]);
    let (_, g2) = pgalois(&["generate", global]);
    ensure(g1 == g2, || "generate output differs".to_string())?;
    ensure(g1 == std::fs::read(one.join("shift.json")).unwrap(), || "generate differs from shift".to_string())?;
    Ok(format!("{runs} report commands, fixtures and generate byte-identical across runs"))
}

fn main() {
    let criteria: [(&str, Criterion); 9] = [
        ("coring axioms and compatibility mutants", criterion_1),
        ("grouplike element", criterion_2),
        ("Galois certificates", criterion_3),
        ("dual ring", criterion_4),
        ("Frobenius system", criterion_5),
        ("Morita context", criterion_6),
        ("dashboard consistency", criterion_7),
        ("descent data and adjunction probes", criterion_8),
        ("CLI determinism", criterion_9),
    ];
    let mut failed = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {title}: {detail} [{secs:.2}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {title}: {why} [{secs:.2}s]", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
