mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use socrank::axioms::{
    check_axiom, fixtures, generate_witness, parse_witness, run_grid, serialize_witness, Axiom, AxiomError,
    AxiomWitness, CellOutcome, Datum, GridConfig, SolutionRef, Verdict,
};
use socrank::solutions::Statistics;
use socrank::{parse_power_relation, Cell, Coalition, PairwiseRelation, PowerRelation};

fn three_player_example() -> PowerRelation {
    parse_power_relation("players: 1 2 3\nranking: {1,2,3} ~ {1,3} > {1,2} ~ {2,3} > {1} ~ {2} ~ {3}").unwrap()
}

fn config(n: usize, trials: u64) -> GridConfig {
    GridConfig {
        n,
        trials,
        seed: 7,
        use_fixtures: true,
    }
}

#[test]
fn generated_witnesses_satisfy_their_hypotheses() {
    for axiom in Axiom::ALL {
        let mut produced = 0;
        let mut missing = 0;
        for seed in 0..10_000u64 {
            let n = 3 + (seed % 3) as usize;
            let solution = SolutionRef::MAIN[(seed / 3 % 5) as usize];
            match generate_witness(axiom, solution, n, seed) {
                Ok(w) => {
                    produced += 1;
                    let v = check_axiom(solution, &w).unwrap();
                    assert!(!v.hypothesis_fails(), "{axiom} {solution} seed {seed}: {v:?}");
                }
                Err(AxiomError::NoWitnessFound { .. }) => missing += 1,
                Err(e) => panic!("{axiom} seed {seed}: {e}"),
            }
        }
        assert!(missing * 100 <= produced, "{axiom}: {missing} seeds without a witness");
    }
}

#[test]
fn generation_is_deterministic() {
    for axiom in Axiom::ALL {
        for seed in [0, 1, 99] {
            let a = generate_witness(axiom, SolutionRef::LexCel, 4, seed).unwrap();
            let b = generate_witness(axiom, SolutionRef::LexCel, 4, seed).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn dichotomous_axiom_needs_three_players() {
    assert!(matches!(
        generate_witness(Axiom::KDD, SolutionRef::Cp, 2, 1),
        Err(AxiomError::UnsatisfiableAtSize { n: 2, .. })
    ));
}

#[test]
fn fixtures_refute_what_they_claim() {
    for f in fixtures() {
        for s in SolutionRef::MAIN {
            let v = check_axiom(s, &f.witness).unwrap();
            assert_eq!(v.is_violated(), f.refutes.contains(&s), "{} against {s}: {v:?}", f.name);
        }
    }
}

#[test]
fn predicate_reference_instances() {
    let v = check_axiom(SolutionRef::Cp, &AxiomWitness::single(Axiom::SDes, three_player_example(), 0, 1)).unwrap();
    assert_eq!(v, Verdict::Holds);

    let dich = parse_power_relation("players: i j k l\nranking: {i} ~ {j,k} ~ {j,l} > *").unwrap();
    let v = check_axiom(SolutionRef::LexCel, &AxiomWitness::single(Axiom::KDD, dich.clone(), 0, 1)).unwrap();
    assert!(v.is_violated());
    assert!(SolutionRef::LexCel.apply(&dich).strict(1, 0));
    let v = check_axiom(SolutionRef::L1, &AxiomWitness::single(Axiom::KDD, dich, 0, 1)).unwrap();
    assert_eq!(v, Verdict::Holds);

    let first = parse_power_relation("players: i j k\nranking: {j} > {i,k} > {j,k} ~ {i} > *").unwrap();
    let second = parse_power_relation("players: i j k\nranking: {j} > {i} > {j,k} ~ {i,k} > *").unwrap();
    let k = Coalition::singleton(2);
    let w = AxiomWitness {
        axiom: Axiom::CA,
        i: 0,
        j: 1,
        first,
        second: Some(second),
        datum: Datum::Bijection(vec![(Coalition::EMPTY, k), (k, Coalition::EMPTY)]),
    };
    assert!(check_axiom(SolutionRef::Cp, &w).unwrap().is_violated());
    assert_eq!(check_axiom(SolutionRef::LexCel, &w).unwrap(), Verdict::Holds);
}

#[test]
fn malformed_witnesses_are_rejected() {
    let pr = three_player_example();
    let same = AxiomWitness::single(Axiom::SDes, pr.clone(), 1, 1);
    assert!(matches!(check_axiom(SolutionRef::Cp, &same), Err(AxiomError::MalformedWitness(_))));

    let k = Coalition::singleton(2);
    let not_bijective = AxiomWitness {
        axiom: Axiom::EC,
        i: 0,
        j: 1,
        first: pr.clone(),
        second: Some(pr.clone()),
        datum: Datum::Bijection(vec![(Coalition::EMPTY, k), (k, k)]),
    };
    assert!(matches!(check_axiom(SolutionRef::Cp, &not_bijective), Err(AxiomError::MalformedWitness(_))));

    let partial = AxiomWitness {
        axiom: Axiom::IWS,
        i: 0,
        j: 1,
        first: pr.clone(),
        second: None,
        datum: Datum::Partition(vec![vec![Coalition::singleton(0)], vec![Coalition::singleton(1)]]),
    };
    assert!(matches!(check_axiom(SolutionRef::Cp, &partial), Err(AxiomError::MalformedWitness(_))));

    let swapped_size = AxiomWitness {
        axiom: Axiom::PCA,
        i: 0,
        j: 1,
        first: pr.clone(),
        second: Some(pr),
        datum: Datum::Bijection(vec![(Coalition::EMPTY, k), (k, Coalition::EMPTY)]),
    };
    assert!(matches!(check_axiom(SolutionRef::Cp, &swapped_size), Err(AxiomError::MalformedWitness(_))));
}

#[test]
fn counterexamples_break_their_target_axiom() {
    for s in SolutionRef::COUNTEREXAMPLES {
        if s == SolutionRef::L1SdReversed {
            continue;
        }
        let (_, axiom) = s.independence_target().unwrap();
        let report = run_grid(&[s], &[axiom], &config(4, 2000));
        assert!(
            matches!(report.cells[0].outcome, CellOutcome::Refuted(_)),
            "{s} was not refuted on {axiom}"
        );
    }
}

#[test]
fn reversed_size_class_solution_collapses_to_l1() {
    // Rows of every size-by-class matrix have the same sums, so entrywise
    // dominance forces equality and the reversal branch never fires.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 2..=5 {
        for _ in 0..500 {
            let pr = common::random_rel(&mut rng, n).to_library();
            assert_eq!(SolutionRef::L1SdReversed.apply(&pr), SolutionRef::L1.apply(&pr));
        }
    }
}

#[test]
fn symmetry_and_monotonicity_imply_strict_desirability() {
    let all: Vec<SolutionRef> = SolutionRef::all().collect();
    let report = run_grid(&all, &[Axiom::Sym, Axiom::M, Axiom::SDes], &config(4, 1000));
    for &s in &all {
        let ok = |a| report.cell(s, a).unwrap().outcome == CellOutcome::Satisfied;
        if ok(Axiom::Sym) && ok(Axiom::M) {
            assert!(ok(Axiom::SDes), "{s} satisfies Sym and M but not SDes");
        }
    }
}

#[test]
fn neutrality_instances_agree_with_symmetry_instances() {
    for s in SolutionRef::all() {
        for seed in 0..300 {
            let w = generate_witness(Axiom::Sym, s, 4, seed).unwrap();
            let lifted = AxiomWitness::single(Axiom::Neu, w.first.clone(), w.i, w.j);
            let sym = check_axiom(s, &w).unwrap();
            let neu = check_axiom(s, &lifted).unwrap();
            assert_eq!(sym.is_violated(), neu.is_violated(), "{s} seed {seed}");
        }
    }
}

#[test]
fn grid_is_schedule_independent() {
    let all: Vec<SolutionRef> = SolutionRef::all().collect();
    let cfg = config(3, 200);
    let together = run_grid(&all, &Axiom::ALL, &cfg);
    assert_eq!(together, run_grid(&all, &Axiom::ALL, &cfg));
    for cell in &together.cells {
        let alone = run_grid(&[cell.solution], &[cell.axiom], &cfg);
        assert_eq!(&alone.cells[0], cell);
    }
}

#[test]
fn refuting_witnesses_replay_from_disk() {
    let dir = std::env::temp_dir().join(format!("socrank-witness-{}", std::process::id()));
    let mut report = run_grid(&SolutionRef::MAIN, &Axiom::ALL, &config(4, 300));
    report.write_witnesses(&dir).unwrap();
    let csv = report.to_csv();
    assert!(csv.starts_with("solution,axiom,verdict,trials,witness_file\n"));
    let mut replayed = 0;
    for cell in &report.cells {
        if let Some(path) = &cell.witness_file {
            let w = parse_witness(&std::fs::read_to_string(path).unwrap()).unwrap();
            assert!(check_axiom(cell.solution, &w).unwrap().is_violated(), "{path}");
            replayed += 1;
        }
    }
    let refuted = report.cells.iter().filter(|c| matches!(c.outcome, CellOutcome::Refuted(_))).count();
    assert_eq!(replayed, refuted);
    assert!(refuted >= 18);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn witness_text_round_trips_for_every_axiom() {
    for axiom in Axiom::ALL {
        for seed in 0..50 {
            let w = generate_witness(axiom, SolutionRef::L1, 4, seed).unwrap();
            let back = parse_witness(&serialize_witness(&w)).unwrap();
            assert!(back.first.same_order(&w.first));
            assert_eq!((back.axiom, back.i, back.j, &back.datum), (w.axiom, w.i, w.j, &w.datum));
            assert_eq!(back.second.is_some(), w.second.is_some());
        }
    }
}

#[test]
fn catalog_reference_behaviour() {
    let pr = three_player_example();
    assert_eq!(SolutionRef::Id.apply(&pr), PairwiseRelation::all_indifferent(3));
    let sd = SolutionRef::SdReversed.apply(&pr);
    assert_eq!(sd.cell(1, 0), Cell::StrictlyAbove);
    assert_eq!(sd, SolutionRef::LexCel.apply(&pr).mirror());

    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for n in 2..=5 {
        for _ in 0..300 {
            let rel = common::random_rel(&mut rng, n);
            let pr = rel.to_library();
            let shifted: Vec<Vec<u64>> = (0..n)
                .map(|p| {
                    let t = common::theta(&rel, p);
                    (0..t.len()).map(|k| t[k] + t.get(k + 1).copied().unwrap_or(0)).collect()
                })
                .collect();
            let out = SolutionRef::IwShiftedTheta.apply(&pr);
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(out.cell(i, j), Cell::from_ordering(shifted[i].cmp(&shifted[j])));
                }
            }
            let stats = Statistics::full(&pr);
            for s in SolutionRef::all() {
                let r = s.apply(&pr);
                for i in 0..n {
                    assert_eq!(r.cell(i, i), Cell::Indifferent, "{s}");
                    for j in 0..n {
                        assert_eq!(r.cell(i, j), r.cell(j, i).mirror(), "{s}");
                    }
                }
            }
            assert_eq!(stats.n(), n);
        }
    }
}
