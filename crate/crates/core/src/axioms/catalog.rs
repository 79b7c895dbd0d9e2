//! The five studied solutions together with the counterexample solutions
//! used to show that each characterizing axiom set is independent.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::model::{Cell, Coalition, PairwiseRelation, PowerRelation};
use crate::solutions::{self, cp_counts, l1_cmp, lexcel_cmp, Method, Statistics};

use super::Axiom;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SolutionRef {
    Cp,
    LexCel,
    DualLex,
    L1,
    L1Star,
    /// Every pair indifferent.
    Id,
    /// CP-majority, ties broken by player index.
    NIndex,
    /// CP-majority, except that a CP tie is won by the player whose
    /// singleton beats the other's.
    EcEmpty,
    /// Lexicographic comparison of per-class CP win counts.
    CatPerClass,
    /// Lex-cel with every strict comparison reversed.
    SdReversed,
    /// Lex-cel, ties broken by player index.
    SIndex,
    /// Lex-cel, ties broken by the largest coalition in the first class
    /// where the player occurs.
    CaLargestSet,
    /// Lex-cel on `θ⁺_k = θ_k + θ_{k+1}`.
    IwShiftedTheta,
    /// Size-by-class matrices scanned with sizes from the largest down.
    KdReversed,
    /// L1, ties broken by the lowest-index partner in two-player coalitions.
    PcaMinPartner,
    /// L1 when it is a linear order, otherwise lex-cel on counts of
    /// minimal-size coalitions per class.
    CiMinimalTheta,
    /// L1, reversed when one matrix dominates the other entrywise.
    L1SdReversed,
    /// L1, ties broken by player index.
    L1SIndex,
    /// L1 on `M⁺_{s,k} = M_{s,k} + M_{s,k+1}`.
    L1IwShiftedM,
}

impl SolutionRef {
    pub const MAIN: [SolutionRef; 5] = [
        SolutionRef::Cp,
        SolutionRef::LexCel,
        SolutionRef::DualLex,
        SolutionRef::L1,
        SolutionRef::L1Star,
    ];

    pub const COUNTEREXAMPLES: [SolutionRef; 14] = [
        SolutionRef::Id,
        SolutionRef::NIndex,
        SolutionRef::EcEmpty,
        SolutionRef::CatPerClass,
        SolutionRef::SdReversed,
        SolutionRef::SIndex,
        SolutionRef::CaLargestSet,
        SolutionRef::IwShiftedTheta,
        SolutionRef::KdReversed,
        SolutionRef::PcaMinPartner,
        SolutionRef::CiMinimalTheta,
        SolutionRef::L1SdReversed,
        SolutionRef::L1SIndex,
        SolutionRef::L1IwShiftedM,
    ];

    pub fn all() -> impl Iterator<Item = SolutionRef> {
        SolutionRef::MAIN.into_iter().chain(SolutionRef::COUNTEREXAMPLES)
    }

    pub fn name(self) -> &'static str {
        match self {
            SolutionRef::Cp => "CP",
            SolutionRef::LexCel => "LexCel",
            SolutionRef::DualLex => "DualLex",
            SolutionRef::L1 => "L1",
            SolutionRef::L1Star => "L1Star",
            SolutionRef::Id => "Id",
            SolutionRef::NIndex => "N_Index",
            SolutionRef::EcEmpty => "EC_Empty",
            SolutionRef::CatPerClass => "CAT_PerClass",
            SolutionRef::SdReversed => "SD_Reversed",
            SolutionRef::SIndex => "S_Index",
            SolutionRef::CaLargestSet => "CA_LargestSet",
            SolutionRef::IwShiftedTheta => "IW_ShiftedTheta",
            SolutionRef::KdReversed => "KD_Reversed",
            SolutionRef::PcaMinPartner => "PCA_MinPartner",
            SolutionRef::CiMinimalTheta => "CI_MinimalTheta",
            SolutionRef::L1SdReversed => "L1SD_Reversed",
            SolutionRef::L1SIndex => "L1S_Index",
            SolutionRef::L1IwShiftedM => "L1IW_ShiftedM",
        }
    }

    pub fn method(self) -> Option<Method> {
        match self {
            SolutionRef::Cp => Some(Method::Cp),
            SolutionRef::LexCel => Some(Method::LexCel),
            SolutionRef::DualLex => Some(Method::DualLex),
            SolutionRef::L1 => Some(Method::L1),
            SolutionRef::L1Star => Some(Method::L1Star),
            _ => None,
        }
    }

    /// For a counterexample: the solution whose characterization it
    /// separates and the one axiom it is built to violate.
    pub fn independence_target(self) -> Option<(SolutionRef, Axiom)> {
        use SolutionRef::*;
        Some(match self {
            Id => (Cp, Axiom::SDes),
            NIndex => (Cp, Axiom::Neu),
            EcEmpty => (Cp, Axiom::EC),
            CatPerClass => (Cp, Axiom::CAT),
            SdReversed => (LexCel, Axiom::SDes),
            SIndex => (LexCel, Axiom::Sym),
            CaLargestSet => (LexCel, Axiom::CA),
            IwShiftedTheta => (LexCel, Axiom::IWS),
            L1SdReversed => (L1, Axiom::SDes),
            L1SIndex => (L1, Axiom::Sym),
            L1IwShiftedM => (L1, Axiom::IWS),
            KdReversed => (L1, Axiom::KDD),
            PcaMinPartner => (L1, Axiom::PCA),
            CiMinimalTheta => (L1, Axiom::CI),
            Cp | LexCel | DualLex | L1 | L1Star => return None,
        })
    }

    pub fn apply(self, pr: &PowerRelation) -> PairwiseRelation {
        if let Some(m) = self.method() {
            return m.apply(pr);
        }
        let n = pr.n();
        match self {
            SolutionRef::Id => PairwiseRelation::all_indifferent(n),
            SolutionRef::NIndex => index_fallback(&solutions::cp_majority(pr)),
            SolutionRef::SIndex => index_fallback(&solutions::lexcel(pr)),
            SolutionRef::L1SIndex => index_fallback(&solutions::l1(pr)),
            SolutionRef::EcEmpty => ec_empty(pr),
            SolutionRef::CatPerClass => cat_per_class(pr),
            SolutionRef::SdReversed => solutions::lexcel(pr).mirror(),
            SolutionRef::CaLargestSet => ca_largest_set(pr),
            SolutionRef::IwShiftedTheta => iw_shifted_theta(pr),
            SolutionRef::KdReversed => kd_reversed(pr),
            SolutionRef::PcaMinPartner => pca_min_partner(pr),
            SolutionRef::CiMinimalTheta => ci_minimal_theta(pr),
            SolutionRef::L1SdReversed => l1_sd_reversed(pr),
            SolutionRef::L1IwShiftedM => l1_iw_shifted(pr),
            _ => unreachable!("main solutions handled above"),
        }
    }
}

impl fmt::Display for SolutionRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolutionRef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace(['_', '-'], "");
        if let Ok(m) = key.parse::<Method>() {
            return Ok(SolutionRef::MAIN[Method::ALL.iter().position(|&x| x == m).unwrap()]);
        }
        SolutionRef::all()
            .find(|r| r.name().to_ascii_lowercase().replace('_', "") == key)
            .ok_or_else(|| format!("unknown solution {s:?}"))
    }
}

fn index_fallback(base: &PairwiseRelation) -> PairwiseRelation {
    PairwiseRelation::from_pairs(base.n(), |i, j| match base.cell(i, j) {
        Cell::Indifferent => Ordering::Greater,
        c => c_to_ord(c),
    })
}

fn c_to_ord(c: Cell) -> Ordering {
    match c {
        Cell::StrictlyAbove => Ordering::Greater,
        Cell::Indifferent => Ordering::Equal,
        Cell::StrictlyBelow => Ordering::Less,
    }
}

fn ec_empty(pr: &PowerRelation) -> PairwiseRelation {
    PairwiseRelation::from_pairs(pr.n(), |i, j| {
        let c = cp_counts(pr, i, j).expect("distinct players");
        if c.d_ij != c.d_ji {
            return c.d_ij.cmp(&c.d_ji);
        }
        // the empty set wins its CP-comparison iff one singleton beats the other
        pr.compare(Coalition::singleton(i), Coalition::singleton(j))
    })
}

/// `counts[k]`: CP-comparisons won by `i` with the winner in class `k`.
fn per_class_wins(pr: &PowerRelation, i: usize, j: usize) -> Vec<u64> {
    let mut counts = vec![0u64; pr.num_classes()];
    let rest = pr.players().grand().without(i).without(j);
    for s in rest.subsets() {
        let (ci, cj) = (pr.class_of(s.with(i)), pr.class_of(s.with(j)));
        if ci < cj {
            counts[ci] += 1;
        }
    }
    counts
}

fn cat_per_class(pr: &PowerRelation) -> PairwiseRelation {
    PairwiseRelation::from_pairs(pr.n(), |i, j| per_class_wins(pr, i, j).cmp(&per_class_wins(pr, j, i)))
}

fn ca_largest_set(pr: &PowerRelation) -> PairwiseRelation {
    let st = Statistics::theta_only(pr);
    let largest = |p: usize| -> usize {
        let Some(k) = st.theta(p).iter().position(|&x| x > 0) else {
            return 0;
        };
        pr.class(k).iter().filter(|c| c.contains(p)).map(|c| c.size()).max().unwrap_or(0)
    };
    PairwiseRelation::from_pairs(pr.n(), |i, j| {
        lexcel_cmp(st.theta(i), st.theta(j)).then_with(|| largest(i).cmp(&largest(j)))
    })
}

fn iw_shifted_theta(pr: &PowerRelation) -> PairwiseRelation {
    let st = Statistics::theta_only(pr);
    let shifted: Vec<Vec<u64>> = (0..pr.n())
        .map(|p| {
            let t = st.theta(p);
            (0..t.len()).map(|k| t[k] + t.get(k + 1).copied().unwrap_or(0)).collect()
        })
        .collect();
    PairwiseRelation::from_key(&shifted)
}

fn kd_reversed(pr: &PowerRelation) -> PairwiseRelation {
    let st = Statistics::full(pr);
    let (n, l) = (pr.n(), pr.num_classes());
    PairwiseRelation::from_pairs(n, |i, j| {
        for k in 0..l.saturating_sub(1) {
            for s in (0..n).rev() {
                let o = st.matrix_entry(i, s, k).cmp(&st.matrix_entry(j, s, k));
                if o != Ordering::Equal {
                    return o;
                }
            }
        }
        Ordering::Equal
    })
}

fn pca_min_partner(pr: &PowerRelation) -> PairwiseRelation {
    let st = Statistics::full(pr);
    let n = pr.n();
    let l = pr.num_classes();
    // partner[p][k]: lowest-index q with {p,q} in class k
    let mut partner = vec![vec![usize::MAX; l]; n];
    for p in 0..n {
        for q in 0..n {
            if q != p {
                let k = pr.class_of(Coalition::from_players([p, q]));
                partner[p][k] = partner[p][k].min(q);
            }
        }
    }
    PairwiseRelation::from_pairs(n, |i, j| {
        l1_cmp(&st, i, j).then_with(|| {
            (0..l)
                .find(|&k| partner[i][k] != partner[j][k])
                .map_or(Ordering::Equal, |k| partner[j][k].cmp(&partner[i][k]))
        })
    })
}

fn ci_minimal_theta(pr: &PowerRelation) -> PairwiseRelation {
    let base = solutions::l1(pr);
    if !base.has_tie() {
        return base;
    }
    let n = pr.n();
    let keys: Vec<Vec<u64>> = (0..n)
        .map(|p| {
            pr.classes()
                .iter()
                .map(|class| {
                    let sizes = class.iter().filter(|c| c.contains(p)).map(|c| c.size());
                    match sizes.clone().min() {
                        Some(m) => sizes.filter(|&s| s == m).count() as u64,
                        None => 0,
                    }
                })
                .collect()
        })
        .collect();
    PairwiseRelation::from_key(&keys)
}

fn l1_sd_reversed(pr: &PowerRelation) -> PairwiseRelation {
    let st = Statistics::full(pr);
    let (n, l) = (pr.n(), pr.num_classes());
    let dominates = |a: usize, b: usize| -> bool {
        (0..n).all(|s| (0..l).all(|k| st.matrix_entry(a, s, k) >= st.matrix_entry(b, s, k)))
    };
    PairwiseRelation::from_pairs(n, |i, j| {
        let o = l1_cmp(&st, i, j);
        match (dominates(i, j), dominates(j, i)) {
            (true, false) | (false, true) => o.reverse(),
            _ => o,
        }
    })
}

fn l1_iw_shifted(pr: &PowerRelation) -> PairwiseRelation {
    let st = Statistics::full(pr);
    let (n, l) = (pr.n(), pr.num_classes());
    let keys: Vec<Vec<u64>> = (0..n)
        .map(|p| {
            let mut key = Vec::with_capacity(n * l);
            for k in 0..l {
                for s in 0..n {
                    let next = if k + 1 < l { st.matrix_entry(p, s, k + 1) } else { 0 };
                    key.push(st.matrix_entry(p, s, k) + next);
                }
            }
            key
        })
        .collect();
    PairwiseRelation::from_key(&keys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_power_relation;

    fn example() -> PowerRelation {
        parse_power_relation("players: 1 2 3\nranking: {1,2,3} ~ {1,3} > {1,2} ~ {2,3} > {1} ~ {2} ~ {3}").unwrap()
    }

    #[test]
    fn id_is_all_indifferent() {
        assert_eq!(SolutionRef::Id.apply(&example()), PairwiseRelation::all_indifferent(3));
    }

    #[test]
    fn sd_reversed_flips_lexcel() {
        let r = SolutionRef::SdReversed.apply(&example());
        assert_eq!(r.cell(1, 0), Cell::StrictlyAbove);
        assert_eq!(r.cell(0, 2), Cell::Indifferent);
    }

    #[test]
    fn shifted_theta_is_lexcel_on_sums() {
        let pr = example();
        // θ(1) = (2,1,1) → (3,2,1); θ(2) = (1,2,1) → (3,3,1)
        let r = SolutionRef::IwShiftedTheta.apply(&pr);
        assert_eq!(r.cell(1, 0), Cell::StrictlyAbove);
    }

    #[test]
    fn index_fallbacks_break_ties_by_position() {
        let pr = example();
        let r = SolutionRef::NIndex.apply(&pr);
        assert_eq!(r.cell(0, 2), Cell::StrictlyAbove);
        assert_eq!(r.cell(2, 1), Cell::StrictlyAbove);
        assert!(!SolutionRef::SIndex.apply(&pr).has_tie());
        assert!(!SolutionRef::L1SIndex.apply(&pr).has_tie());
    }

    #[test]
    fn names_parse_back() {
        for s in SolutionRef::all() {
            assert_eq!(s.name().parse::<SolutionRef>().unwrap(), s);
        }
        assert_eq!("lexcel".parse::<SolutionRef>().unwrap(), SolutionRef::LexCel);
        assert_eq!("l1star".parse::<SolutionRef>().unwrap(), SolutionRef::L1Star);
        assert!("nope".parse::<SolutionRef>().is_err());
    }

    #[test]
    fn every_solution_is_total_and_consistent() {
        let pr = example();
        for s in SolutionRef::all() {
            let r = s.apply(&pr);
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(r.cell(i, j), r.cell(j, i).mirror(), "{s}");
                }
            }
        }
    }
}
