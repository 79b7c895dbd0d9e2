//! The solution × axiom verification grid.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use super::{
    check_axiom, fixtures_for, generate_witness, serialize_witness, trial_seed, Axiom, AxiomError, SolutionRef,
    Verdict, Violation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridConfig {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub use_fixtures: bool,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            n: 4,
            trials: 1000,
            seed: 7,
            use_fixtures: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellOutcome {
    Satisfied,
    Refuted(Box<Violation>),
    /// No witness exists at this player count.
    Unsatisfiable,
}

impl CellOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            CellOutcome::Satisfied => "Satisfied",
            CellOutcome::Refuted(_) => "Refuted",
            CellOutcome::Unsatisfiable => "Unsatisfiable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridCell {
    pub solution: SolutionRef,
    pub axiom: Axiom,
    pub outcome: CellOutcome,
    /// Random trials evaluated.
    pub trials: u64,
    /// Trials where no witness could be built for this solution.
    pub vacuous: u64,
    /// Name of the hand-built witness that refuted the cell, if any.
    pub fixture: Option<&'static str>,
    pub witness_file: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridReport {
    pub config: GridConfig,
    pub cells: Vec<GridCell>,
}

/// Whether a main solution satisfies an axiom according to the published
/// table; `None` for counterexample solutions and for monotonicity.
pub fn expected_satisfied(solution: SolutionRef, axiom: Axiom) -> Option<bool> {
    use Axiom::*;
    let fails: &[Axiom] = match solution {
        SolutionRef::Cp => &[CA, IWS, IBS, KDD, PCA, CI],
        SolutionRef::LexCel => &[EC, IBS, KDD],
        SolutionRef::DualLex => &[EC, IWS, KDD],
        SolutionRef::L1 => &[EC, CA, IBS],
        SolutionRef::L1Star => &[EC, CA, IWS],
        _ => return None,
    };
    if axiom == M {
        return None;
    }
    Some(!fails.contains(&axiom))
}

fn run_cell(solution: SolutionRef, axiom: Axiom, config: &GridConfig) -> GridCell {
    let mut cell = GridCell {
        solution,
        axiom,
        outcome: CellOutcome::Satisfied,
        trials: 0,
        vacuous: 0,
        fixture: None,
        witness_file: None,
    };
    if config.use_fixtures {
        for f in fixtures_for(axiom) {
            if let Ok(Verdict::Violated(v)) = check_axiom(solution, &f.witness) {
                cell.outcome = CellOutcome::Refuted(v);
                cell.fixture = Some(f.name);
                return cell;
            }
        }
    }
    for t in 0..config.trials {
        let seed = trial_seed(config.seed, axiom, solution, t);
        let w = match generate_witness(axiom, solution, config.n, seed) {
            Ok(w) => w,
            Err(AxiomError::UnsatisfiableAtSize { .. }) => {
                cell.outcome = CellOutcome::Unsatisfiable;
                return cell;
            }
            Err(_) => {
                cell.trials += 1;
                cell.vacuous += 1;
                continue;
            }
        };
        cell.trials += 1;
        match check_axiom(solution, &w) {
            Ok(Verdict::Violated(v)) => {
                cell.outcome = CellOutcome::Refuted(v);
                return cell;
            }
            Ok(Verdict::HypothesisFails(_)) | Err(_) => cell.vacuous += 1,
            Ok(Verdict::Holds) => {}
        }
    }
    cell
}

/// Evaluate every (solution, axiom) pair. Cells run in parallel; each
/// depends only on its own coordinates and seeds, so the report is the same
/// for any schedule.
pub fn run_grid(solutions: &[SolutionRef], axioms: &[Axiom], config: &GridConfig) -> GridReport {
    let coords: Vec<(SolutionRef, Axiom)> = solutions
        .iter()
        .flat_map(|&s| axioms.iter().map(move |&a| (s, a)))
        .collect();
    let workers = std::thread::available_parallelism().map_or(1, |p| p.get()).min(coords.len().max(1));
    let mut cells: Vec<Option<GridCell>> = vec![None; coords.len()];
    std::thread::scope(|scope| {
        let chunk = coords.len().div_ceil(workers).max(1);
        for (slot, work) in cells.chunks_mut(chunk).zip(coords.chunks(chunk)) {
            scope.spawn(move || {
                for (out, &(s, a)) in slot.iter_mut().zip(work) {
                    *out = Some(run_cell(s, a, config));
                }
            });
        }
    });
    GridReport {
        config: *config,
        cells: cells.into_iter().map(|c| c.expect("every cell computed")).collect(),
    }
}

impl GridReport {
    pub fn cell(&self, solution: SolutionRef, axiom: Axiom) -> Option<&GridCell> {
        self.cells.iter().find(|c| c.solution == solution && c.axiom == axiom)
    }

    /// Cells of main solutions whose outcome disagrees with the published
    /// table.
    pub fn mismatches(&self) -> Vec<&GridCell> {
        self.cells
            .iter()
            .filter(|c| match expected_satisfied(c.solution, c.axiom) {
                Some(expected) => expected != (c.outcome == CellOutcome::Satisfied),
                None => false,
            })
            .collect()
    }

    /// Write each refuting witness as `<dir>/<solution>_<axiom>.witness`.
    pub fn write_witnesses(&mut self, dir: &Path) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        for cell in &mut self.cells {
            if let CellOutcome::Refuted(v) = &cell.outcome {
                let path = dir.join(format!("{}_{}.witness", cell.solution, cell.axiom));
                let mut text = format!("# {}\n", v.detail);
                text.push_str(&serialize_witness(&v.witness));
                fs::write(&path, text)?;
                cell.witness_file = Some(path.display().to_string());
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("solution,axiom,verdict,trials,witness_file\n");
        for c in &self.cells {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                c.solution,
                c.axiom,
                c.outcome.label(),
                c.trials,
                c.witness_file.as_deref().unwrap_or("")
            );
        }
        out
    }
}
