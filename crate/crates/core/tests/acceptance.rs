//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::path::Path;
use std::time::Instant;

use alexander::alexcore::{
    circle, dual_cohomology, free_group_2, homology, jordan_data, jump_ideal, jump_ideal_reconstruct,
    restrict_scalars, torus, uct_verify, FreeComplex, JordanData, ModuleDecomposition,
};
use alexander::bundles::{
    induced_homology_action, mapping_torus_complex, monodromy_alexander, obstruction_check, FiberData, Rule,
    TargetClass,
};
use alexander::dga::{heisenberg_model, semisimple_check, OneCocycle};
use alexander::gysin::{analyze, c_minus_two_points, c_star, LocalModule, Purity};
use alexander::io::{self, MonodromyInput};
use alexander::laurent::{canonical, cyclotomic, divides, parse_poly, IrreducibleFactor, LaurentPoly};
use alexander::linalg::{evaluate_rank_at, smith_normal_form, EvalPoint, LaurentMatrix, RationalMatrix};
use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(s: &str) -> LaurentPoly {
    parse_poly(s).unwrap()
}

fn is_unit(x: &LaurentPoly) -> bool {
    x.is_unit()
}

fn snf_suite() -> Outcome {
    let mut r = rng(1);
    let mut nontrivial = 0;
    for case in 0..200 {
        let a = snf_suite_matrix(&mut r);
        let s = smith_normal_form(&a, true);
        let (left, right) = (s.left.as_ref().unwrap(), s.right.as_ref().unwrap());
        ensure(left.mul(&a).mul(right) == s.diagonal(a.rows(), a.cols()), || format!("case {}: transform identity", case))?;
        ensure(is_unit(&det(&left.to_dense())) && is_unit(&det(&right.to_dense())), || {
            format!("case {}: transforms are not unimodular", case)
        })?;
        if s.torsion_factors().next().is_some() {
            nontrivial += 1;
        }
        let mut prod = LaurentPoly::one();
        for k in 1..=a.rows().min(a.cols()) {
            prod = match s.invariant_factors.get(k - 1) {
                Some(d) => &prod * d,
                None => LaurentPoly::zero(),
            };
            let oracle = minors_gcd(&a, k);
            ensure(canonical(&prod) == oracle, || {
                format!("case {}: k = {}: product {} vs gcd of minors {}", case, k, prod, oracle)
            })?;
        }
    }
    Ok(format!("200 matrices, {} with non-unit invariant factors", nontrivial))
}

fn worked_examples() -> Outcome {
    let s1 = || {
        let mut m = ModuleDecomposition::zero();
        m.add_block(IrreducibleFactor::cyclotomic(1), 1);
        m
    };
    let checks: [(&str, FreeComplex, Vec<ModuleDecomposition>); 3] = [
        ("circle", circle(), vec![s1(), ModuleDecomposition::zero()]),
        ("torus", torus(), vec![s1(), s1(), ModuleDecomposition::zero()]),
        ("free group", free_group_2(), vec![s1(), ModuleDecomposition::free(1)]),
    ];
    for (name, c, expected) in checks {
        for (i, want) in expected.iter().enumerate() {
            let h = homology(&c, i).map_err(|e| e.to_string())?;
            ensure(&h == want, || format!("{}: H_{} = {}, expected {}", name, i, h, want))?;
        }
    }
    Ok("circle, torus, free group".into())
}

fn mapping_torus_theorem() -> Outcome {
    let mut r = rng(3);
    let mut blocks = 0;
    for case in 0..50 {
        let f = random_fiber(&mut r);
        let c = mapping_torus_complex(&f).map_err(|e| e.to_string())?;
        let j = jordan_data(&c).map_err(|e| e.to_string())?;
        let hs = induced_homology_action(&f).map_err(|e| e.to_string())?;
        let direct = monodromy_alexander(&hs).map_err(|e| e.to_string())?;
        ensure(j.same_modules(&direct), || format!("case {}: {:?} vs {:?}", case, j, direct))?;
        blocks += j.degrees.iter().filter(|m| !m.is_semisimple()).count();
    }
    Ok(format!("50 fibers, {} degrees with a Jordan block of size > 1", blocks))
}

/// Blocks of the restriction computed from `t^N` acting on `Q[t]/(f^h)`.
fn restriction_oracle(module: &[(LaurentPoly, u32)], n: usize, candidates: &[LaurentPoly]) -> Vec<(LaurentPoly, Vec<u32>)> {
    let mats: Vec<RationalMatrix> = module.iter().map(|(f, h)| companion(&canonical(&f.pow(*h)))).collect();
    let dim: usize = mats.iter().map(|m| m.rows()).sum();
    let mut t = RationalMatrix::zeros(0, 0);
    for m in &mats {
        t = RationalMatrix::block_diag(&t, m);
    }
    let u = t.pow(n as u32);
    let mut out = Vec::new();
    let mut covered = 0;
    for g in candidates {
        let sizes = primary_blocks(g, &u);
        covered += sizes.iter().map(|&s| s as usize).sum::<usize>() * canonical(g).span();
        if !sizes.is_empty() {
            out.push((canonical(g), sizes));
        }
    }
    assert_eq!(covered, dim, "candidate factors do not exhaust the module");
    out
}

fn restriction_suite() -> Outcome {
    let mut candidates = cyclotomic_factors(6);
    for root in [q(2), qq(-1, 2)] {
        for n in 1..=6u32 {
            let l = num_traits::Pow::pow(&root, n);
            if l != q(1) && l != q(-1) {
                candidates.push(LaurentPoly::from_coeffs(0, vec![-l, q(1)]));
            }
        }
    }
    let mut cases = 0;
    let mut modules: Vec<Vec<(LaurentPoly, u32)>> = Vec::new();
    for d in 1..=6 {
        for h in 1..=4 {
            modules.push(vec![(cyclotomic(d), h)]);
        }
    }
    modules.push(vec![(cyclotomic(3), 2), (cyclotomic(6), 1), (cyclotomic(1), 3)]);
    modules.push(vec![(t_minus(2), 2), (cyclotomic(4), 1)]);
    modules.push(vec![(LaurentPoly::from_coeffs(0, vec![qq(1, 2), q(1)]), 3)]);
    for module in &modules {
        let mut m = ModuleDecomposition::zero();
        for (f, h) in module {
            m.add_block(IrreducibleFactor::classify(f), *h);
        }
        for n in 1..=6 {
            let rest = restrict_scalars(&m, n).map_err(|e| e.to_string())?;
            let got: Vec<(LaurentPoly, Vec<u32>)> =
                rest.torsion.iter().map(|(f, s)| (canonical(&f.poly), s.clone())).collect();
            let mut got = got;
            got.sort();
            let mut want = restriction_oracle(module, n, &candidates);
            want.sort();
            ensure(got == want && rest.free_rank == 0, || format!("{} over N = {}: {:?} vs {:?}", m, n, got, want))?;
            cases += 1;
        }
    }
    Ok(format!("{} module/N pairs", cases))
}

fn corpus_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus_complexes() -> Result<Vec<(String, FreeComplex)>, String> {
    let mut out = Vec::new();
    let mut names: Vec<String> = std::fs::read_dir(corpus_dir())
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    for name in names {
        let text = std::fs::read_to_string(corpus_dir().join(&name)).map_err(|e| e.to_string())?;
        if name.ends_with(".cplx") {
            out.push((name, io::parse_complex(&text).map_err(|e| e.to_string())?));
        } else if name.ends_with(".mono") {
            if let MonodromyInput::Chain(f) = io::parse_monodromy(&text).map_err(|e| e.to_string())? {
                out.push((name, mapping_torus_complex(&f).map_err(|e| e.to_string())?));
            }
        }
    }
    Ok(out)
}

/// `dim H_i` of the complex specialized at a point, from evaluated ranks.
fn specialized_dim(c: &FreeComplex, i: usize, at: &EvalPoint) -> usize {
    let rank = |m: &LaurentMatrix| match at {
        EvalPoint::Rational(x) => m.eval(x).unwrap().rank(),
        _ => evaluate_rank_at(m, at).unwrap(),
    };
    c.rank(i) - rank(&c.boundary(i)) - rank(&c.boundary(i + 1))
}

fn vanishes_at(j: &LaurentPoly, at: &EvalPoint) -> bool {
    match at {
        EvalPoint::Rational(x) => j.is_zero() || j.eval(x).unwrap() == q(0),
        EvalPoint::RootOfUnity(d) => divides(&cyclotomic(*d), j),
        EvalPoint::RootOf(f) => divides(&f.poly, j),
    }
}

fn jump_suite() -> Outcome {
    let mut points: Vec<EvalPoint> = [q(1), q(-1), q(2), qq(1, 2), q(3), qq(-2, 3)].into_iter().map(EvalPoint::Rational).collect();
    points.extend((2..=6).map(EvalPoint::RootOfUnity));
    let mut ideals = 0;
    for (name, c) in corpus_complexes()? {
        let mut prev = ModuleDecomposition::zero();
        for i in 0..=c.top() {
            let h = homology(&c, i).map_err(|e| e.to_string())?;
            for k in 1..=c.rank(i) + h.torsion_length() {
                let a = jump_ideal(&c, i, k).map_err(|e| e.to_string())?;
                let b = jump_ideal_reconstruct(&h, &prev, k);
                ensure(canonical(&a) == canonical(&b), || format!("{}: J_{}^{}: {} vs {}", name, i, k, a, b))?;
                for at in &points {
                    let big = specialized_dim(&c, i, at) >= k;
                    ensure(big == vanishes_at(&a, at), || {
                        format!("{}: J_{}^{} = {} at {:?} disagrees with the specialized dimension", name, i, k, a, at)
                    })?;
                }
                ideals += 1;
            }
            prev = h;
        }
    }
    Ok(format!("{} ideals over the corpus, {} sample points each", ideals, points.len()))
}

fn uct_suite() -> Outcome {
    let mut count = 0;
    for (name, c) in corpus_complexes()? {
        let rep = uct_verify(&c).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("{}: {}", name, rep.mismatches.join("; ")))?;
        count += 1;
    }
    let mut r = rng(6);
    for case in 0..40 {
        let k = random_complex(&mut r, 1 + case % 3, 4);
        let rep = uct_verify(&k.complex).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("random {}: {}", case, rep.mismatches.join("; ")))?;
        // cohomology is also checked against the construction
        for i in 0..=k.complex.top() {
            let h = dual_cohomology(&k.complex, i).map_err(|e| e.to_string())?;
            let free = k.homology[i].free_rank;
            let tors = if i >= 1 { k.homology[i - 1].torsion.clone() } else { Default::default() };
            ensure(h.free_rank == free && h.torsion == tors, || format!("random {}: H^{} = {}", case, i, h))?;
        }
        count += 1;
    }
    Ok(format!("{} complexes", count))
}

fn formality_suite() -> Outcome {
    let mut r = rng(7);
    let mut torsion_seen = 0;
    for case in 0..100 {
        let a = random_formal_algebra(&mut r, 12);
        let eta = random_eta(&mut r, &a);
        let v = semisimple_check(&a, &eta).map_err(|e| format!("case {}: {}", case, e))?;
        ensure(v.semisimple, || format!("case {}: {} for {:?}", case, v, a.all_labels()))?;
        torsion_seen += v.modules.iter().map(|m| m.torsion.len()).sum::<usize>();
    }
    let h = heisenberg_model();
    let eta = OneCocycle::from_ints(&h, &[1, 0, 0]).map_err(|e| e.to_string())?;
    let v = semisimple_check(&h, &eta).map_err(|e| e.to_string())?;
    ensure(!v.semisimple && v.modules[2].torsion == [2], || format!("Heisenberg control: {}", v))?;
    Ok(format!("100 algebras ({} torsion blocks, all of size 1); Heisenberg control {}", torsion_seen, v))
}

fn local_part(m: &ModuleDecomposition) -> LocalModule {
    LocalModule {
        free_rank: m.free_rank,
        torsion: m.sizes_of(&p("t - 1")).into_iter().map(|s| s as usize).collect(),
    }
}

fn gysin_suite() -> Outcome {
    for (name, g, cw) in [("C*", c_star(), circle()), ("C - {0, 1}", c_minus_two_points(), free_group_2())] {
        let rep = analyze(&g, None).map_err(|e| e.to_string())?;
        let check = |label: &str| rep.checks.iter().find(|c| c.name.starts_with(label)).is_some_and(|c| c.passed);
        for label in ["double complex", "vanishing region", "E^1 semisimple", "E^2 semisimple", "E^3 = E^4"] {
            ensure(check(label), || format!("{}: {} failed\n{}", name, label, rep))?;
        }
        ensure(rep.purity == Purity::WeightTwo, || format!("{}: eta is not of weight two", name))?;
        for row in &rep.bounds.rows {
            let plain = (row.degree + 1).min(2 - row.degree);
            let pure = (row.degree + 1).min(1 - row.degree.min(1));
            ensure(row.exponent <= plain && row.exponent <= pure && row.bound == pure, || {
                format!("{}: degree {} exponent {} exceeds the bound", name, row.degree, row.exponent)
            })?;
        }
        ensure(rep.bounds.edges.iter().all(|c| c.passed), || format!("{}: edge freeness\n{}", name, rep))?;
        // stabilized cohomology of the model against the cover of a CW model
        let model = alexander::gysin::GysinModel::new(&g).map_err(|e| e.to_string())?;
        let eta = model.eta().map_err(|e| e.to_string())?;
        let stable = alexander::dga::stabilized_modules(&model.algebra, &eta, 64).map_err(|e| e.to_string())?;
        for i in 0..=cw.top() {
            let h = local_part(&homology(&cw, i).map_err(|e| e.to_string())?);
            let free = stable.get(i).map_or(0, |s| s.free_rank);
            let tors = stable.get(i + 1).map(|s| s.torsion.clone()).unwrap_or_default();
            ensure(h.free_rank == free && h.torsion == tors, || {
                format!("{}: H_{} = {} but stabilized free rank {} and shifted torsion {:?}", name, i, h, free, tors)
            })?;
        }
    }
    Ok("C* and C - {0, 1}".into())
}

fn jordan_with(n: usize, excess_at: Option<usize>) -> JordanData {
    let degrees = (0..=2 * n)
        .map(|i| {
            let mut s = (i + 1).min(2 * n - i);
            if excess_at == Some(i) {
                s += 1;
            }
            let mut m = ModuleDecomposition::zero();
            if s > 0 {
                m.add_block(IrreducibleFactor::cyclotomic(1), s as u32);
                m.add_block(IrreducibleFactor::cyclotomic(3), 1);
            }
            m
        })
        .collect();
    JordanData::new(degrees)
}

fn obstruction_suite() -> Outcome {
    let load = |name: &str| -> Result<FiberData, String> {
        let text = std::fs::read_to_string(corpus_dir().join(name)).map_err(|e| e.to_string())?;
        match io::parse_monodromy(&text).map_err(|e| e.to_string())? {
            MonodromyInput::Chain(f) => Ok(f),
            MonodromyInput::Homology(_) => Err(format!("{}: expected chain data", name)),
        }
    };
    let heis = jordan_data(&mapping_torus_complex(&load("heisenberg.mono")?).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let v = obstruction_check(&heis, TargetClass::Kahler);
    ensure(v.obstructed() && v.reasons.iter().any(|r| r.rule == Rule::Semisimplicity && r.degree == 1), || {
        format!("Heisenberg: {}", v)
    })?;
    ensure(v.to_string().contains("semi-simplicity violated at degree 1"), || v.to_string())?;
    let id = jordan_data(&mapping_torus_complex(&load("torus-identity.mono")?).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let v = obstruction_check(&id, TargetClass::Kahler);
    ensure(!v.obstructed(), || format!("torus identity: {}", v))?;
    let mut cases = 2;
    for n in 1..=4 {
        let class = TargetClass::QuasiProjective { n };
        let v = obstruction_check(&jordan_with(n, None), class);
        ensure(!v.obstructed(), || format!("n = {}: at the bound: {}", n, v))?;
        cases += 1;
        for i in 0..=2 * n {
            let v = obstruction_check(&jordan_with(n, Some(i)), class);
            ensure(
                v.obstructed() && v.reasons.iter().all(|r| r.rule == Rule::JordanBound && r.degree == i),
                || format!("n = {}: excess at degree {}: {}", n, i, v),
            )?;
            cases += 1;
        }
    }
    Ok(format!("{} verdicts", cases))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("SNF oracle suite", snf_suite),
        ("worked-example exactness", worked_examples),
        ("mapping torus vs monodromy", mapping_torus_theorem),
        ("restriction oracle", restriction_suite),
        ("jump-ideal bidirectional check", jump_suite),
        ("UCT duality", uct_suite),
        ("formal algebras are semisimple", formality_suite),
        ("Gysin end-to-end", gysin_suite),
        ("obstruction verdicts", obstruction_suite),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {}: {} ({:.2} s)", k + 1, name, detail, secs),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {}: {} ({:.2} s)", k + 1, name, why, secs);
            }
        }
    }
    if failed > 0 {
        println!("{} of {} criteria failed", failed, criteria.len());
        std::process::exit(1);
    }
}
