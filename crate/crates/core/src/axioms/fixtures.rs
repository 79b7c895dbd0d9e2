//! Hand-built counterexamples. The grid evaluates these before any random
//! search so that known refutations are found deterministically.

use crate::model::{parse_power_relation, Coalition, PowerRelation};

use super::{Axiom, AxiomWitness, Datum, SolutionRef};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub witness: AxiomWitness,
    /// Main solutions this instance refutes.
    pub refutes: Vec<SolutionRef>,
}

fn pr(text: &str) -> PowerRelation {
    parse_power_relation(text).expect("fixture relation is valid")
}

fn coalition(pr: &PowerRelation, labels: &[&str]) -> Coalition {
    Coalition::from_players(labels.iter().map(|l| pr.players().index_of(l).expect("fixture label")))
}

pub fn fixtures() -> Vec<Fixture> {
    use SolutionRef::*;
    let mut out = Vec::new();

    out.push(Fixture {
        name: "strictly-desirable-pair",
        witness: AxiomWitness::single(
            Axiom::SDes,
            pr("players: 1 2 3\nranking: {1,2,3} ~ {1,3} > {1,2} ~ {2,3} > {1} ~ {2} ~ {3}"),
            0,
            1,
        ),
        refutes: vec![],
    });

    // π exchanges ∅ and {k}
    let first = pr("players: i j k\nranking: {j} > {i,k} > {j,k} ~ {i} > *");
    let second = pr("players: i j k\nranking: {j} > {i} > {j,k} ~ {i,k} > *");
    let k = coalition(&first, &["k"]);
    out.push(Fixture {
        name: "coalitional-anonymity-cp",
        witness: AxiomWitness {
            axiom: Axiom::CA,
            i: 0,
            j: 1,
            first,
            second: Some(second),
            datum: Datum::Bijection(vec![(Coalition::EMPTY, k), (k, Coalition::EMPTY)]),
        },
        refutes: vec![Cp],
    });

    let first = pr("players: i j k\nranking: {i,k} > {j,k} > {j} > {i} > *");
    let second = pr("players: i j k\nranking: {j} > {i} > {i,k} > {j,k} > *");
    let k = coalition(&first, &["k"]);
    out.push(Fixture {
        name: "equality-of-coalitions",
        witness: AxiomWitness {
            axiom: Axiom::EC,
            i: 0,
            j: 1,
            first,
            second: Some(second),
            datum: Datum::Bijection(vec![(Coalition::EMPTY, Coalition::EMPTY), (k, k)]),
        },
        refutes: vec![LexCel, DualLex, L1, L1Star],
    });

    // π exchanges {k} and {l}
    let first = pr("players: i j k l\nranking: {j,l} > {i,k} > {j,k} ~ {i,l} > *");
    let second = pr("players: i j k l\nranking: {j,l} > {i,l} > {j,k} ~ {i,k} > *");
    let (k, l) = (coalition(&first, &["k"]), coalition(&first, &["l"]));
    let kl = k.union(l);
    out.push(Fixture {
        name: "per-size-anonymity-cp",
        witness: AxiomWitness {
            axiom: Axiom::PCA,
            i: 0,
            j: 1,
            first,
            second: Some(second),
            datum: Datum::Bijection(vec![(Coalition::EMPTY, Coalition::EMPTY), (k, l), (l, k), (kl, kl)]),
        },
        refutes: vec![Cp],
    });

    let first = pr("players: i j k l\nranking: {j,k} ~ {j,l} > {i,k} ~ {i,l} ~ {i} ~ {i,k,l} > *");
    let j = coalition(&first, &["j"]);
    out.push(Fixture {
        name: "consistency-after-indifference-cp",
        witness: AxiomWitness {
            axiom: Axiom::CI,
            i: 0,
            j: 1,
            first,
            second: None,
            datum: Datum::Subset(vec![j]),
        },
        refutes: vec![Cp],
    });

    out.push(Fixture {
        name: "dichotomous-small-coalitions",
        witness: AxiomWitness::single(
            Axiom::KDD,
            pr("players: i j k l\nranking: {i} ~ {j,k} ~ {j,l} > *"),
            0,
            1,
        ),
        refutes: vec![Cp, LexCel, DualLex],
    });

    out.push(Fixture {
        name: "dichotomous-three-players",
        witness: AxiomWitness::single(
            Axiom::KDD,
            pr("players: 1 2 3\nranking: {1,2,3} ~ {1,2} ~ {2,3} ~ {1} > {1,3} ~ {2} ~ {3}"),
            0,
            1,
        ),
        refutes: vec![Cp, LexCel, DualLex],
    });

    out
}

pub fn fixtures_for(axiom: Axiom) -> Vec<Fixture> {
    fixtures().into_iter().filter(|f| f.witness.axiom == axiom).collect()
}
