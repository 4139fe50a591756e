//! Both engines against independent oracles: brute force over all
//! assignments, and brute force over every large enough generator subset.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trilo::{
    brute_force, encode_nae, encode_presentation, encode_survivor_query, evaluate, sample_binomial,
    Clause, CnfFormula, Engine, GeneratorSet, Literal, Presentation, SolveOptions, Status,
};

const ENGINES: [Engine; 2] = [Engine::Dpll, Engine::Cdcl];

fn check_against_brute(f: &CnfFormula) -> Status {
    let expected = brute_force(f).unwrap().status;
    for engine in ENGINES {
        let v = trilo::solve_with(f, SolveOptions::with_engine(engine));
        assert_eq!(v.status, expected, "{engine} disagrees with brute force");
        if let Some(model) = &v.model {
            assert!(evaluate(f, model).unwrap());
        }
    }
    expected
}

/// Relator density around the satisfiability threshold for small `n`.
fn random_presentation(i: u64) -> Presentation {
    let n = 2 + (i % 11) as u32;
    let c = 0.05 + 2.0 * ((i * 7919) % 1000) as f64 / 1000.0;
    let p = (c / f64::from(n * n)).min(1.0);
    sample_binomial(n, p, 1_000 + i).unwrap()
}

#[test]
fn phi_r_instances_match_brute_force() {
    let (mut sat, mut unsat) = (0, 0);
    for i in 0..1000 {
        let pres = random_presentation(i);
        let f = encode_presentation(&pres, &GeneratorSet::all(pres.n())).unwrap();
        match check_against_brute(&f) {
            Status::Satisfiable => sat += 1,
            Status::Unsatisfiable => unsat += 1,
            Status::Indeterminate => unreachable!(),
        }
    }
    // Both outcomes must be well represented for the comparison to mean much.
    assert!(sat > 100 && unsat > 100, "sat={sat} unsat={unsat}");
}

fn subset_oracle(pres: &Presentation, k: u32) -> Status {
    let n = pres.n();
    for mask in 0u64..(1 << n) {
        if mask.count_ones() < k {
            continue;
        }
        let subset = GeneratorSet::from_mask(n, mask);
        let f = encode_presentation(pres, &subset).unwrap();
        if brute_force(&f).unwrap().is_sat() {
            return Status::Satisfiable;
        }
    }
    Status::Unsatisfiable
}

#[test]
fn survivor_queries_match_subset_oracle() {
    let (mut sat, mut unsat) = (0, 0);
    for i in 0..500u64 {
        let n = 1 + (i % 8) as u32;
        let k = (i / 8 % u64::from(n + 1)) as u32;
        let c = 0.5 + 4.0 * ((i * 104_729) % 1000) as f64 / 1000.0;
        let pres = sample_binomial(n, (c / f64::from(n * n)).min(1.0), 50_000 + i).unwrap();
        let f = encode_survivor_query(&pres, k).unwrap();
        let expected = subset_oracle(&pres, k);
        for engine in ENGINES {
            let v = trilo::solve_with(&f, SolveOptions::with_engine(engine));
            assert_eq!(v.status, expected, "{engine}, n={n}, k={k}, instance {i}");
            if let Some(model) = &v.model {
                // The active generators form a witness subset of size ≥ k.
                let active: Vec<u32> = (1..=n).filter(|&g| model.value(n + g)).collect();
                assert!(active.len() >= k as usize);
                let subset = GeneratorSet::from_indices(n, active).unwrap();
                let restricted = encode_presentation(&pres, &subset).unwrap();
                let x = trilo::Assignment::from_fn(n, |v| model.value(v));
                assert!(evaluate(&restricted, &x).unwrap());
            }
        }
        match expected {
            Status::Satisfiable => sat += 1,
            _ => unsat += 1,
        }
    }
    assert!(sat > 30 && unsat > 30, "sat={sat} unsat={unsat}");
}

#[test]
fn nae_formula_is_equisatisfiable() {
    for i in 0..500 {
        let pres = random_presentation(i * 3 + 1);
        let n = pres.n();
        let cnf = encode_presentation(&pres, &GeneratorSet::all(n)).unwrap();
        let nae = encode_nae(&pres);
        let cnf_sat = brute_force(&cnf).unwrap().is_sat();
        let nae_sat = (0u32..1 << n).any(|bits| {
            let eta = trilo::Assignment::from_fn(n, |v| bits >> (v - 1) & 1 == 1);
            trilo::evaluate_nae(&nae, &eta).unwrap()
        });
        assert_eq!(cnf_sat, nae_sat, "instance {i}");
        let via_solver = trilo::sat::solve_nae(&nae, SolveOptions::with_engine(Engine::Cdcl));
        assert_eq!(via_solver.is_sat(), nae_sat);
    }
}

fn random_ksat(rng: &mut ChaCha8Rng, vars: u32, clauses: usize, width: usize) -> CnfFormula {
    let list = (0..clauses)
        .map(|_| {
            let lits = (0..width)
                .map(|_| Literal::new(rng.random_range(1..=vars), rng.random_bool(0.5)))
                .collect();
            Clause::new(lits).unwrap()
        })
        .collect();
    CnfFormula::from_clauses(vars, list).unwrap()
}

/// Generic CNF stresses the paths survivor queries rarely reach: unit and
/// duplicate literals, variable elimination with model extension, and long
/// learnt clauses.
#[test]
fn random_cnf_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..600 {
        let vars = rng.random_range(1..=20);
        let width = 1 + i % 4;
        let ratio = [1.0, 2.0, 4.3, 10.0][i / 4 % 4];
        let clauses = ((f64::from(vars) * ratio) as usize).max(1);
        let f = random_ksat(&mut rng, vars, clauses, width);
        check_against_brute(&f);
    }
}

#[test]
fn engines_agree_beyond_brute_force_range() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let vars = rng.random_range(40..=110);
        let clauses = (f64::from(vars) * rng.random_range(3.8..4.8)) as usize;
        let f = random_ksat(&mut rng, vars, clauses, 3);
        let a = trilo::solve_with(&f, SolveOptions::with_engine(Engine::Dpll));
        let b = trilo::solve_with(&f, SolveOptions::with_engine(Engine::Cdcl));
        assert_eq!(a.status, b.status);
    }
}

/// Long enough runs to go through clause-database reductions, vivification
/// and compaction; every returned model is checked inside `solve_with`.
#[test]
fn learnt_clause_maintenance_keeps_models_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut longest = 0;
    for _ in 0..4 {
        let f = random_ksat(&mut rng, 200, 852, 3);
        let v = trilo::solve_with(&f, SolveOptions::with_engine(Engine::Cdcl));
        assert_ne!(v.status, Status::Indeterminate);
        longest = longest.max(v.stats.conflicts);
    }
    assert!(longest > 5_000, "longest run had {longest} conflicts");
}
