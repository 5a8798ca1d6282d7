//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use exactcat::config::{Theorem, WorkbenchConfig};
use exactcat::sweeps::{self, Sweep, SweepContext};
use exactcat::Session;
use exactcat_core::algebra::Module;
use exactcat_core::exact::{
    enumerate_exact_structures, validate_axioms, validate_subfunctor, Enumeration, Provenance, SubfunctorExt,
};
use exactcat_core::ext::{pullback_sequence, pushout_sequence, ExtGroup, ShortExactSequence};
use exactcat_core::linalg::Subspace;
use exactcat_core::relative::{projective_vanishing_check, rel_ext_table};
use exactcat_core::Category;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)
}

struct Bed {
    name: &'static str,
    session: Session,
    enumeration: Enumeration,
}

fn open(name: &'static str, file: &str) -> Result<Bed, String> {
    let session = Session::open(&WorkbenchConfig::new(spec(file))).map_err(|e| e.to_string())?;
    let enumeration = session.enumeration().map_err(|e| e.to_string())?;
    Ok(Bed { name, session, enumeration })
}

fn sweep(bed: &Bed, t: Theorem) -> Result<Sweep, String> {
    let s = &bed.session;
    let ctx = SweepContext::new(&s.cat, s.bound, s.budget).map_err(|e| e.to_string())?;
    sweeps::run(&t, &ctx, &bed.enumeration.structures).map_err(|e| e.to_string())
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn stat(s: &Sweep, key: &str) -> u64 {
    s.statistics.get(key).copied().unwrap_or(0)
}

/// Dimension vectors with Tits form 1 on a quiver without relations.
fn positive_roots(vertices: usize, arrows: &[(usize, usize)], max_entry: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut d = vec![0usize; vertices];
    loop {
        let mut k = 0;
        while k < vertices {
            d[k] += 1;
            if d[k] <= max_entry {
                break;
            }
            d[k] = 0;
            k += 1;
        }
        if k == vertices {
            break;
        }
        let q: i64 = d.iter().map(|&x| (x * x) as i64).sum::<i64>()
            - arrows.iter().map(|&(s, t)| (d[s] * d[t]) as i64).sum::<i64>();
        if q == 1 {
            out.push(d.clone());
        }
    }
    out.sort();
    out
}

fn criterion1() -> Outcome {
    let mut notes = Vec::new();
    for (file, expected) in [("a2.toml", 3), ("a3.toml", 6)] {
        let start = Instant::now();
        let s = Session::open(&WorkbenchConfig::new(spec(file))).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let cat = &s.cat;
        let mut dims: Vec<Vec<usize>> = cat.catalog().modules.iter().map(|m| m.dims().to_vec()).collect();
        dims.sort();
        let roots = positive_roots(cat.alg.vertices(), cat.alg.arrows(), 3);
        ensure(cat.len() == expected, format!("{file}: {} indecomposables, expected {expected}", cat.len()))?;
        ensure(dims == roots, format!("{file}: dimension vectors {dims:?} differ from positive roots {roots:?}"))?;
        ensure(elapsed < Duration::from_secs(10), format!("{file}: took {elapsed:?}"))?;
        notes.push(format!("{file} {} in {:.2}s", cat.len(), elapsed.as_secs_f64()));
    }
    Ok(notes.join(", "))
}

fn criterion2(beds: &[Bed]) -> Outcome {
    let mut notes = Vec::new();
    for bed in beds {
        let s = sweep(bed, Theorem::ConflationCriteria)?;
        let eligible = bed.enumeration.eligible().count();
        ensure(s.structures == eligible && eligible > 0, format!("{}: swept {} of {eligible} structures", bed.name, s.structures))?;
        ensure(s.passed(), format!("{}: {} disagreements", bed.name, s.violations.len()))?;
        ensure(stat(&s, "conflations") > 0 && stat(&s, "non_conflations") > 0, format!("{}: one-sided sample", bed.name))?;
        notes.push(format!("{} {} classes", bed.name, s.cases));
    }
    Ok(notes.join(", "))
}

/// Every assignment of subspaces to the nonzero Ext groups.
fn full_product(cat: &Category) -> Vec<SubfunctorExt> {
    let f = cat.field();
    let n = cat.len();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| cat.ext.dim(x, y) > 0).collect();
    let choices: Vec<Vec<Subspace>> = pairs.iter().map(|&(x, y)| Subspace::enumerate_all(f, cat.ext.dim(x, y))).collect();
    let mut out = Vec::new();
    let mut digits = vec![0usize; pairs.len()];
    loop {
        let mut table: Vec<Vec<Subspace>> =
            (0..n).map(|x| (0..n).map(|y| Subspace::zero(f, cat.ext.dim(x, y))).collect()).collect();
        for (k, &(x, y)) in pairs.iter().enumerate() {
            table[x][y] = choices[k][digits[k]].clone();
        }
        out.push(SubfunctorExt::from_table(cat, table, Provenance::Explicit).expect("shapes match"));
        let mut k = 0;
        while k < digits.len() {
            digits[k] += 1;
            if digits[k] < choices[k].len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        if k == digits.len() {
            return out;
        }
    }
}

fn criterion3(beds: &[Bed]) -> Outcome {
    let mut notes = Vec::new();
    for bed in beds {
        let start = Instant::now();
        let cat = &bed.session.cat;
        let e = enumerate_exact_structures(cat, bed.session.bound, bed.session.budget).map_err(|e| e.to_string())?;
        let oracle: Vec<SubfunctorExt> = full_product(cat)
            .into_iter()
            .filter(|s| validate_subfunctor(cat, s).is_ok() && validate_axioms(cat, s, bed.session.bound).passed())
            .collect();
        let found: Vec<&SubfunctorExt> = e.structures.iter().map(|s| &s.structure).collect();
        ensure(
            found.len() == oracle.len() && oracle.iter().all(|s| found.contains(&s)),
            format!("{}: enumeration {} vs oracle {}", bed.name, found.len(), oracle.len()),
        )?;
        if bed.name == "A2" {
            ensure(found.len() == 2, format!("A2 has {} structures", found.len()))?;
            ensure(found.contains(&&SubfunctorExt::split(cat)) && found.contains(&&SubfunctorExt::abelian(cat)), "A2 extremes missing")?;
        }
        let s = sweep(bed, Theorem::PairBijection)?;
        let eligible = e.eligible().count() as u64;
        ensure(s.passed(), format!("{}: {} round-trip failures", bed.name, s.violations.len()))?;
        ensure(
            stat(&s, "structure_round_trips") == eligible && stat(&s, "pair_round_trips") == eligible,
            format!("{}: round trips cover {} of {eligible}", bed.name, stat(&s, "structure_round_trips")),
        )?;
        let elapsed = start.elapsed();
        ensure(elapsed < Duration::from_secs(120), format!("{}: took {elapsed:?}", bed.name))?;
        notes.push(format!("{} {} structures ({eligible} eligible) in {:.2}s", bed.name, found.len(), elapsed.as_secs_f64()));
    }
    Ok(notes.join(", "))
}

fn criterion4(beds: &[Bed]) -> Outcome {
    let mut notes = Vec::new();
    let mut total = 0;
    for bed in beds {
        let cat = &bed.session.cat;
        let bound = 2 * cat.catalog().max_dim();
        ensure(bed.enumeration.bound == bound, format!("{}: verified at {}", bed.name, bed.enumeration.bound))?;
        for (i, s) in bed.enumeration.structures.iter().enumerate() {
            let r = validate_axioms(cat, &s.structure, bound);
            ensure(r.checks.len() == 5 && r.passed(), format!("{}: structure {i} fails {:?}", bed.name, r.first_failure()))?;
        }
        let mut controls = 0;
        for s in full_product(cat).into_iter().filter(|s| validate_subfunctor(cat, s).is_err()) {
            let r = validate_axioms(cat, &s, bound);
            let failure = r.first_failure().ok_or(format!("{}: unclosed assignment accepted", bed.name))?;
            ensure(failure.witness.is_some(), format!("{}: rejection without witness", bed.name))?;
            controls += 1;
        }
        total += controls;
        notes.push(format!("{} {} structures, {controls} controls rejected", bed.name, bed.enumeration.structures.len()));
    }
    // A2 has a single one-dimensional Ext group, so every assignment there is closed.
    ensure(total > 0, "no negative controls")?;
    Ok(notes.join(", "))
}

fn criterion5(beds: &[Bed]) -> Outcome {
    let mut notes = Vec::new();
    for bed in beds {
        let s = sweep(bed, Theorem::Wakamatsu)?;
        ensure(s.passed(), format!("{}: {} violations", bed.name, s.violations.len()))?;
        let (c, e) = (stat(&s, "covers_checked"), stat(&s, "envelopes_checked"));
        ensure(s.cases > 0 && c > 0 && e > 0, format!("{}: vacuous ({c} covers, {e} envelopes)", bed.name))?;
        notes.push(format!("{} {} triples, {c} covers, {e} envelopes", bed.name, s.cases));
    }
    Ok(notes.join(", "))
}

fn criterion6(beds: &[Bed]) -> Outcome {
    let mut notes = Vec::new();
    for bed in beds {
        let s = sweep(bed, Theorem::CompleteHereditary)?;
        ensure(s.passed(), format!("{}: {:?}", bed.name, s.violations.first().map(|v| &v.message)))?;
        ensure(stat(&s, "undetermined") == 0, format!("{}: {} undetermined", bed.name, stat(&s, "undetermined")))?;
        ensure(stat(&s, "degenerate_pairs_complete_hereditary") == 2, format!("{}: degenerate pairs not verified", bed.name))?;
        ensure(stat(&s, "complete_hereditary") > 0 && stat(&s, "not_complete_hereditary") > 0, format!("{}: one-sided", bed.name))?;
        notes.push(format!("{} {} triples", bed.name, s.cases));
    }
    Ok(notes.join(", "))
}

fn criterion7(beds: &[Bed]) -> Outcome {
    let mut pairs = 0;
    for bed in beds {
        let cat = &bed.session.cat;
        for (i, s) in bed.enumeration.structures.iter().enumerate() {
            let t = rel_ext_table(cat, &s.structure, 1).map_err(|e| format!("{}: structure {i}: {e}", bed.name))?;
            ensure(t.table_mismatches.is_empty(), format!("{}: structure {i} differs at {:?}", bed.name, t.table_mismatches))?;
            pairs += cat.len() * cat.len();
        }
    }
    Ok(format!("{pairs} (structure, X, Y) pairs"))
}

fn criterion8(beds: &[Bed]) -> Outcome {
    let mut notes = Vec::new();
    for bed in beds {
        let s = sweep(bed, Theorem::ProjectiveVanishing)?;
        let expected = (bed.enumeration.structures.len() * bed.session.cat.len()) as u64;
        ensure(s.passed() && s.cases == expected, format!("{}: {} violations over {} cases", bed.name, s.violations.len(), s.cases))?;
        notes.push(format!("{} {} cases", bed.name, s.cases));
    }
    let a2 = &beds[0].session;
    let cat = &a2.cat;
    let sink = cat.alg.simple(1);
    let r = projective_vanishing_check(cat, &SubfunctorExt::split(cat), &sink, a2.bound).map_err(|e| e.to_string())?;
    ensure(!r.lhs && !r.rhs && r.rhs_witness.is_some(), format!("A2 split structure, sink simple: {r:?}"))?;
    notes.push("A2 split/sink simple: lhs=false rhs=false".into());
    Ok(notes.join(", "))
}

fn direct_sum(cat: &Category, s1: &ShortExactSequence, s2: &ShortExactSequence) -> ShortExactSequence {
    let alg = &cat.alg;
    let l = alg.direct_sum(&[&s1.left, &s2.left]);
    let m = alg.direct_sum(&[&s1.mid, &s2.mid]);
    let r = alg.direct_sum(&[&s1.right, &s2.right]);
    let i = m.inclusions[0].after(&s1.i).after(&l.projections[0]).add(&m.inclusions[1].after(&s2.i).after(&l.projections[1]));
    let p = r.inclusions[0].after(&s1.p).after(&m.projections[0]).add(&r.inclusions[1].after(&s2.p).after(&m.projections[1]));
    ShortExactSequence { left: l.module, mid: m.module, right: r.module, i, p }
}

fn criterion9(beds: &[Bed]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0;
    for bed in beds {
        let cat = &bed.session.cat;
        let alg = &cat.alg;
        let f = cat.field();
        let n = cat.len();
        let mut objects: Vec<Module> = (0..n).map(|i| cat.module(i).clone()).collect();
        for i in 0..n {
            for j in i..n {
                objects.push(alg.direct_sum(&[cat.module(i), cat.module(j)]).module);
            }
        }
        let groups: Vec<ExtGroup> = objects
            .iter()
            .flat_map(|x| objects.iter().map(move |y| (x, y)))
            .map(|(x, y)| ExtGroup::new(alg, x, y))
            .filter(|g| g.dim() > 0)
            .collect();
        for _ in 0..60 {
            let g = &groups[rng.gen_range(0..groups.len())];
            let a: Vec<u32> = (0..g.dim()).map(|_| rng.gen_range(0..f.p())).collect();
            let b: Vec<u32> = (0..g.dim()).map(|_| rng.gen_range(0..f.p())).collect();
            let sum = direct_sum(cat, &g.realize(alg, &a), &g.realize(alg, &b));
            let cc = alg.direct_sum(&[g.x(), g.x()]);
            let aa = alg.direct_sum(&[g.y(), g.y()]);
            let diag = cc.inclusions[0].add(&cc.inclusions[1]);
            let codiag = aa.projections[0].add(&aa.projections[1]);
            let explicit = pushout_sequence(alg, &pullback_sequence(alg, &sum, &diag, g.x()), &codiag, g.y());
            let got = g.classify(alg, &explicit).map_err(|e| e.to_string())?;
            ensure(got == g.baer_sum(&a, &b), format!("{}: {a:?} + {b:?} gave {got:?}", bed.name))?;
            checked += 1;
        }
    }
    ensure(checked >= 100, format!("only {checked} pairs"))?;
    Ok(format!("{checked} pairs"))
}

fn full_run(cache: &std::path::Path, file: &str) -> Result<Vec<u8>, String> {
    let mut out = Vec::new();
    let mut commands: Vec<Vec<String>> = vec![vec!["catalog".into()], vec!["enumerate".into()]];
    commands.extend(Theorem::ALL.iter().map(|t| vec!["verify".to_string(), t.id().to_string()]));
    for cmd in commands {
        let o = Command::new(env!("CARGO_BIN_EXE_exactcat"))
            .args(&cmd)
            .arg("--spec")
            .arg(spec(file))
            .args(["--format", "json"])
            .env("EXACTCAT_CACHE_DIR", cache)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(o.status.code() == Some(0), format!("{cmd:?} exited with {:?}", o.status.code()))?;
        out.extend(o.stdout);
    }
    Ok(out)
}

fn criterion10() -> Outcome {
    let cache = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut bytes = 0;
    for file in ["a2.toml", "a3.toml"] {
        let first = full_run(cache.path(), file)?;
        let second = full_run(cache.path(), file)?;
        ensure(first == second, format!("{file}: reports differ between runs"))?;
        bytes += first.len();
    }
    Ok(format!("{bytes} bytes identical"))
}

fn main() {
    let beds = match (open("A2", "a2.toml"), open("A3", "a3.toml")) {
        (Ok(a), Ok(b)) => vec![a, b],
        (a, b) => {
            eprintln!("could not load testbeds: {:?} {:?}", a.err(), b.err());
            std::process::exit(1);
        }
    };
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("catalog correctness", Box::new(criterion1)),
        ("conflation criteria agree", Box::new(|| criterion2(&beds))),
        ("structure/pair bijection", Box::new(|| criterion3(&beds))),
        ("axiom validation", Box::new(|| criterion4(&beds))),
        ("cover/envelope third terms", Box::new(|| criterion5(&beds))),
        ("complete hereditary conditions", Box::new(|| criterion6(&beds))),
        ("relative Ext¹ consistency", Box::new(|| criterion7(&beds))),
        ("projective vanishing", Box::new(|| criterion8(&beds))),
        ("Baer sum oracle", Box::new(|| criterion9(&beds))),
        ("deterministic reports", Box::new(criterion10)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("criterion {:>2} PASS  {name}: {note} [{secs:.2}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
