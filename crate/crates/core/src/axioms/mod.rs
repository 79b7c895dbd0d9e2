//! Axioms as executable predicates over concrete witnesses, randomized
//! witness generation, a catalog of counterexample solutions and the
//! solution × axiom verification grid.

mod catalog;
mod fixtures;
mod generate;
mod grid;
mod io;

pub use catalog::SolutionRef;
pub use fixtures::{fixtures, fixtures_for, Fixture};
pub use generate::{
    all_power_relations, generate_witness, random_bijection, random_power_relation, splitmix64, trial_seed,
};
pub use grid::{expected_satisfied, run_grid, CellOutcome, GridCell, GridConfig, GridReport};
pub use io::{parse_witness, serialize_witness};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::{Coalition, ModelError, PowerRelation};
use crate::solutions::{k_dominance_profile, sdes_premise, KDominanceCell};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    SDes,
    Sym,
    Neu,
    EC,
    CA,
    PCA,
    CAT,
    IWS,
    IBS,
    KDD,
    CI,
    /// Monotonicity; not part of any characterization.
    M,
}

impl Axiom {
    /// Row order of the published verification table.
    pub const TABLE: [Axiom; 11] = [
        Axiom::SDes,
        Axiom::Neu,
        Axiom::CAT,
        Axiom::Sym,
        Axiom::EC,
        Axiom::CA,
        Axiom::IWS,
        Axiom::IBS,
        Axiom::KDD,
        Axiom::PCA,
        Axiom::CI,
    ];

    pub const ALL: [Axiom; 12] = [
        Axiom::SDes,
        Axiom::Sym,
        Axiom::Neu,
        Axiom::EC,
        Axiom::CA,
        Axiom::PCA,
        Axiom::CAT,
        Axiom::IWS,
        Axiom::IBS,
        Axiom::KDD,
        Axiom::CI,
        Axiom::M,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::SDes => "SDes",
            Axiom::Sym => "Sym",
            Axiom::Neu => "Neu",
            Axiom::EC => "EC",
            Axiom::CA => "CA",
            Axiom::PCA => "PCA",
            Axiom::CAT => "CAT",
            Axiom::IWS => "IWS",
            Axiom::IBS => "IBS",
            Axiom::KDD => "k-DD",
            Axiom::CI => "CI",
            Axiom::M => "M",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('-', "");
        Axiom::ALL
            .into_iter()
            .find(|a| a.name().to_ascii_lowercase().replace('-', "") == key)
            .ok_or_else(|| format!("unknown axiom {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("malformed witness: {0}")]
    MalformedWitness(String),
    #[error("{axiom} has no witness with {n} players")]
    UnsatisfiableAtSize { axiom: Axiom, n: usize },
    #[error("no witness for {axiom} under {solution} after {attempts} attempts")]
    NoWitnessFound {
        axiom: Axiom,
        solution: SolutionRef,
        attempts: usize,
    },
    #[error("witness file: {0}")]
    Format(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn malformed(msg: impl Into<String>) -> AxiomError {
    AxiomError::MalformedWitness(msg.into())
}

/// The axiom-specific object a witness quantifies over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Datum {
    None,
    /// A bijection `π` on `2^{N∖{i,j}}` as `(S, π(S))` pairs.
    Bijection(Vec<(Coalition, Coalition)>),
    /// Ordered refinements `T_1 ≻ … ≻ T_m` of equivalence classes shared by
    /// both relations; together they describe the removed tie pairs.
    Refinements(Vec<Vec<Vec<Coalition>>>),
    /// Ordered partition of the worst (or best) class.
    Partition(Vec<Vec<Coalition>>),
    /// A subset `Σ` of the worst class.
    Subset(Vec<Coalition>),
}

/// One concrete instance of an axiom's quantifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomWitness {
    pub axiom: Axiom,
    pub i: usize,
    pub j: usize,
    pub first: PowerRelation,
    pub second: Option<PowerRelation>,
    pub datum: Datum,
}

impl AxiomWitness {
    pub fn single(axiom: Axiom, pr: PowerRelation, i: usize, j: usize) -> Self {
        AxiomWitness {
            axiom,
            i,
            j,
            first: pr,
            second: None,
            datum: Datum::None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub witness: AxiomWitness,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    HypothesisFails(String),
    Holds,
    Violated(Box<Violation>),
}

impl Verdict {
    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated(_))
    }

    pub fn hypothesis_fails(&self) -> bool {
        matches!(self, Verdict::HypothesisFails(_))
    }
}

fn conclude(w: &AxiomWitness, ok: bool, detail: impl FnOnce() -> String) -> Verdict {
    if ok {
        Verdict::Holds
    } else {
        Verdict::Violated(Box::new(Violation {
            witness: w.clone(),
            detail: detail(),
        }))
    }
}

fn sorted(v: &[Coalition]) -> Vec<Coalition> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// Replace class `k` of `pr` by the ordered parts.
pub fn refine_class(pr: &PowerRelation, k: usize, parts: &[Vec<Coalition>]) -> Result<PowerRelation, AxiomError> {
    if sorted(&parts.concat()) != sorted(pr.class(k)) {
        return Err(malformed(format!("parts do not partition class {}", k + 1)));
    }
    if parts.iter().any(|p| p.is_empty()) {
        return Err(malformed("partition has an empty part"));
    }
    let mut classes: Vec<Vec<Coalition>> = pr.classes()[..k].to_vec();
    classes.extend(parts.iter().cloned());
    classes.extend(pr.classes()[k + 1..].iter().cloned());
    Ok(PowerRelation::new(pr.players().clone(), classes)?)
}

fn find_class(pr: &PowerRelation, members: &[Coalition]) -> Option<usize> {
    let want = sorted(members);
    let first = *want.first()?;
    if first.is_empty() || first.index() >= pr.class_table().len() {
        return None;
    }
    let k = pr.class_of(first);
    (sorted(pr.class(k)) == want).then_some(k)
}

/// Apply each refinement to the class of `pr` with the same members.
pub fn apply_refinements(pr: &PowerRelation, refinements: &[Vec<Vec<Coalition>>]) -> Result<PowerRelation, AxiomError> {
    let mut out = pr.clone();
    for parts in refinements {
        let k = find_class(&out, &parts.concat())
            .ok_or_else(|| malformed("refinement does not cover exactly one equivalence class"))?;
        out = refine_class(&out, k, parts)?;
    }
    Ok(out)
}

/// The two relations prescribed for a subset `Σ` of the worst class: `Σ`
/// promoted into the penultimate class, and the dichotomous relation with
/// everything but `Σ_l∖Σ` on top.
pub fn ci_relations(pr: &PowerRelation, sigma: &[Coalition]) -> Result<(PowerRelation, PowerRelation), AxiomError> {
    let l = pr.num_classes();
    if l < 2 {
        return Err(malformed("relation needs at least two classes"));
    }
    let last = pr.class(l - 1);
    let mut in_sigma = vec![false; pr.class_table().len()];
    for &c in sigma {
        if c.is_empty() || c.index() >= in_sigma.len() || pr.class_of(c) != l - 1 {
            return Err(malformed("Σ must be a subset of the worst class"));
        }
        if std::mem::replace(&mut in_sigma[c.index()], true) {
            return Err(malformed("Σ lists a coalition twice"));
        }
    }
    let rest: Vec<Coalition> = last.iter().copied().filter(|c| !in_sigma[c.index()]).collect();
    if rest.is_empty() {
        return Err(malformed("Σ must differ from the worst class"));
    }
    let players = pr.players().clone();
    let mut first: Vec<Vec<Coalition>> = pr.classes()[..l - 1].to_vec();
    first[l - 2].extend(sigma.iter().copied());
    first.push(rest.clone());
    let top: Vec<Coalition> = pr.classes()[..l - 1].iter().flatten().copied().chain(sigma.iter().copied()).collect();
    Ok((
        PowerRelation::new(players.clone(), first)?,
        PowerRelation::new(players, vec![top, rest])?,
    ))
}

fn bijection_table(w: &AxiomWitness, pairs: &[(Coalition, Coalition)]) -> Result<Vec<Coalition>, AxiomError> {
    let rest = w.first.players().grand().without(w.i).without(w.j);
    let size = w.first.class_table().len();
    let mut map = vec![None; size];
    let mut hit = vec![false; size];
    for &(s, t) in pairs {
        if !s.is_subset_of(rest) || !t.is_subset_of(rest) {
            return Err(malformed("π must act on coalitions avoiding i and j"));
        }
        if map[s.index()].replace(t).is_some() || std::mem::replace(&mut hit[t.index()], true) {
            return Err(malformed("π is not a bijection"));
        }
    }
    if rest.subsets().any(|s| map[s.index()].is_none()) {
        return Err(malformed("π is not defined on every coalition avoiding i and j"));
    }
    Ok(map.into_iter().map(|m| m.unwrap_or(Coalition::EMPTY)).collect())
}

/// Coalitions containing `i` but not `j` are those that may move; the rest
/// keep their mutual comparisons, and no mover falls relative to them.
pub fn is_i_improving_j_invariant(pr: &PowerRelation, pr2: &PowerRelation, i: usize, j: usize) -> bool {
    let size = pr.class_table().len();
    let mover = |m: usize| (m >> i) & 1 == 1 && (m >> j) & 1 == 0;
    let mut improved = false;
    for a in 1..size {
        for b in 1..size {
            let (ca, cb) = (Coalition(a as u32), Coalition(b as u32));
            let before = pr.compare(ca, cb);
            let after = pr2.compare(ca, cb);
            match (mover(a), mover(b)) {
                (false, false) if before != after => return false,
                (true, false) => {
                    if after < before {
                        return false;
                    }
                    improved |= after > before;
                }
                _ => {}
            }
        }
    }
    improved
}

/// Evaluate the axiom carried by `w` for `solution`.
pub fn check_axiom(solution: SolutionRef, w: &AxiomWitness) -> Result<Verdict, AxiomError> {
    let (i, j) = (w.i, w.j);
    let n = w.first.n();
    if i >= n || j >= n || i == j {
        return Err(malformed("players i and j must be distinct and in range"));
    }
    if let Some(second) = &w.second {
        if second.players() != w.first.players() {
            return Err(malformed("both relations must share the player set"));
        }
    }
    let needs_second = matches!(w.axiom, Axiom::EC | Axiom::CA | Axiom::PCA | Axiom::CAT | Axiom::M);
    if needs_second != w.second.is_some() {
        return Err(malformed(if needs_second {
            "a second relation is required"
        } else {
            "no second relation is expected"
        }));
    }
    let datum_ok = match (&w.axiom, &w.datum) {
        (Axiom::EC | Axiom::CA | Axiom::PCA, Datum::Bijection(_)) => true,
        (Axiom::CAT, Datum::Refinements(_)) => true,
        (Axiom::IWS | Axiom::IBS, Datum::Partition(_)) => true,
        (Axiom::CI, Datum::Subset(_)) => true,
        (Axiom::SDes | Axiom::Sym | Axiom::Neu | Axiom::KDD | Axiom::M, Datum::None) => true,
        _ => false,
    };
    if !datum_ok {
        return Err(malformed(format!("wrong datum kind for {}", w.axiom)));
    }

    let pr = &w.first;
    let r = solution.apply(pr);
    let rest = pr.players().grand().without(i).without(j);
    let label = |p: usize| pr.players().name(p).to_string();
    let (li, lj) = (label(i), label(j));

    let verdict = match w.axiom {
        Axiom::SDes => {
            if !sdes_premise(pr, i, j).expect("pair checked") {
                return Ok(Verdict::HypothesisFails(format!("{li} is not strictly desirable over {lj}")));
            }
            conclude(w, r.strict(i, j), || format!("{li} should be strictly above {lj}"))
        }
        Axiom::Sym => {
            if rest.subsets().any(|s| pr.class_of(s.with(i)) != pr.class_of(s.with(j))) {
                return Ok(Verdict::HypothesisFails(format!("{li} and {lj} are not symmetric")));
            }
            conclude(w, r.indifferent(i, j), || format!("{li} and {lj} should be indifferent"))
        }
        Axiom::Neu => {
            let r2 = solution.apply(&pr.swap_players(i, j));
            conclude(w, r.weak(i, j) == r2.weak(j, i), || {
                format!("{li} R {lj} is {} but {lj} R' {li} is {} after exchanging them", r.weak(i, j), r2.weak(j, i))
            })
        }
        Axiom::EC | Axiom::CA | Axiom::PCA => {
            let Datum::Bijection(pairs) = &w.datum else { unreachable!() };
            let pi = bijection_table(w, pairs)?;
            let pr2 = w.second.as_ref().unwrap();
            let holds = match w.axiom {
                Axiom::EC => rest
                    .subsets()
                    .all(|s| pr.compare(s.with(i), s.with(j)) == pr2.compare(pi[s.index()].with(i), pi[s.index()].with(j))),
                axiom => {
                    let per_size = axiom == Axiom::PCA;
                    if per_size && rest.subsets().any(|s| pi[s.index()].size() != s.size()) {
                        return Err(malformed("π must preserve coalition sizes"));
                    }
                    rest.subsets().all(|s| {
                        rest.subsets().filter(|t| !per_size || t.size() == s.size()).all(|t| {
                            pr.compare(s.with(i), t.with(j)) == pr2.compare(pi[s.index()].with(i), t.with(j))
                        })
                    })
                }
            };
            if !holds {
                return Ok(Verdict::HypothesisFails("comparisons are not preserved by π".into()));
            }
            let r2 = solution.apply(pr2);
            conclude(w, r.weak(i, j) == r2.weak(i, j), || {
                format!("{li} R {lj} is {} under the first relation but {} under the second", r.weak(i, j), r2.weak(i, j))
            })
        }
        Axiom::CAT => {
            let Datum::Refinements(refs) = &w.datum else { unreachable!() };
            let pr2 = w.second.as_ref().unwrap();
            for parts in refs {
                let members = parts.concat();
                if find_class(pr, &members).is_none() || find_class(pr2, &members).is_none() {
                    return Err(malformed("refined class must be an equivalence class of both relations"));
                }
            }
            let r2 = solution.apply(pr2);
            if !(r.indifferent(i, j) && r2.indifferent(i, j)) {
                return Ok(Verdict::HypothesisFails(format!("{li} and {lj} are not indifferent in both relations")));
            }
            let a = solution.apply(&apply_refinements(pr, refs)?);
            let b = solution.apply(&apply_refinements(pr2, refs)?);
            conclude(w, a.weak(i, j) == b.weak(i, j), || {
                format!("after the tiebreaks {li} R {lj} is {} in the first relation but {} in the second", a.weak(i, j), b.weak(i, j))
            })
        }
        Axiom::IWS | Axiom::IBS => {
            let Datum::Partition(parts) = &w.datum else { unreachable!() };
            let l = pr.num_classes();
            if l < 2 {
                return Ok(Verdict::HypothesisFails("relation has a single class".into()));
            }
            let k = if w.axiom == Axiom::IWS { l - 1 } else { 0 };
            let refined = refine_class(pr, k, parts)?;
            if !r.strict(i, j) {
                return Ok(Verdict::HypothesisFails(format!("{li} is not strictly above {lj}")));
            }
            let r2 = solution.apply(&refined);
            conclude(w, r2.strict(i, j), || format!("{li} should stay strictly above {lj} after refining"))
        }
        Axiom::KDD => {
            if pr.num_classes() != 2 {
                return Ok(Verdict::HypothesisFails("relation is not dichotomous".into()));
            }
            let profile = k_dominance_profile(pr, i, j).expect("pair checked");
            if profile.contains(&KDominanceCell::Incomparable) {
                return Ok(Verdict::HypothesisFails("some size level is incomparable".into()));
            }
            let first_i = profile.iter().position(|&c| c == KDominanceCell::StrictForI);
            let first_j = profile.iter().position(|&c| c == KDominanceCell::StrictForJ);
            match (first_i, first_j) {
                (Some(a), Some(b)) if a < b => {}
                _ => {
                    return Ok(Verdict::HypothesisFails(format!(
                        "{li} does not strictly dominate {lj} first at a smaller size"
                    )))
                }
            }
            conclude(w, r.strict(i, j), || format!("{li} should be strictly above {lj}"))
        }
        Axiom::CI => {
            let Datum::Subset(sigma) = &w.datum else { unreachable!() };
            let (p1, p2) = ci_relations(pr, sigma)?;
            if !r.indifferent(i, j) {
                return Ok(Verdict::HypothesisFails(format!("{li} and {lj} are not indifferent")));
            }
            let (a, b) = (solution.apply(&p1), solution.apply(&p2));
            conclude(w, a.weak(i, j) == b.weak(i, j), || {
                format!("{li} R {lj} is {} after promotion but {} in the dichotomous relation", a.weak(i, j), b.weak(i, j))
            })
        }
        Axiom::M => {
            let pr2 = w.second.as_ref().unwrap();
            if !r.indifferent(i, j) {
                return Ok(Verdict::HypothesisFails(format!("{li} and {lj} are not indifferent")));
            }
            if !is_i_improving_j_invariant(pr, pr2, i, j) {
                return Ok(Verdict::HypothesisFails("second relation is not an improvement for i only".into()));
            }
            let r2 = solution.apply(pr2);
            conclude(w, r2.strict(i, j), || format!("{li} should be strictly above {lj} after improving"))
        }
    };
    Ok(verdict)
}
