//! Running the stages in order and collecting a [`Report`].

use std::fmt;
use std::time::Instant;

use polycup_core::diagonal::coderivation_defect;
use polycup_core::{
    aw_fan_oracle, boundary_subcomplex, build_cubical_complex, compute_at_model, cup_matrix, pairing_rank,
    polygon_diagonal, rank_oracle, simplify, verify_structure_explicit, AtModel, Betti, CellComplex, CupPairing,
    Diagonal, Simplification, Termination, VoxelImage,
};
use thiserror::Error;

use crate::report::{CellCounts, CupTriple, Report, TerminationConfig};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Build,
    Simplify,
    Homology,
    Cup,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Build => "build",
            Stage::Simplify => "simplify",
            Stage::Homology => "homology",
            Stage::Cup => "cup",
        })
    }
}

#[derive(Debug, Error)]
#[error("{stage}: {source}")]
pub struct StageError {
    pub stage: Stage,
    pub source: polycup_core::Error,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub termination: Termination,
    /// Polygon runs the later stages on the simplified complex; Serre runs
    /// them on the cubical surface and skips simplification.
    pub diagonal: Diagonal,
}

impl Default for Config {
    fn default() -> Self {
        Config { termination: Termination::Coplanar, diagonal: Diagonal::Polygon }
    }
}

/// Everything computed by one run, up to the requested stage.
pub struct Run {
    pub cubical: CellComplex,
    pub surface: CellComplex,
    pub simplification: Option<Simplification>,
    pub model: Option<AtModel>,
    pub pairing: Option<CupPairing>,
    pub report: Report,
}

impl Run {
    /// The complex the homology stages work on.
    pub fn working(&self) -> &CellComplex {
        self.simplification.as_ref().map_or(&self.surface, |s| &s.complex)
    }
}

fn termination_config(t: Termination) -> TerminationConfig {
    match t {
        Termination::Coplanar => TerminationConfig { kind: "coplanar".into(), min_edges: None },
        Termination::MinEdges(m) => TerminationConfig { kind: "min-edges".into(), min_edges: Some(m) },
    }
}

fn triples(cp: &CupPairing) -> Vec<CupTriple> {
    cp.triples().into_iter().map(|(i, j, k)| CupTriple { i, j, k }).collect()
}

struct Clock(Instant);

impl Clock {
    fn lap(&mut self, report: &mut Report, stage: &str) {
        let now = Instant::now();
        report.timings_us.insert(stage.into(), (now - self.0).as_micros() as u64);
        self.0 = now;
    }
}

/// Runs the pipeline through `through`.
pub fn run(image: &VoxelImage, digest: String, config: Config, through: Stage) -> Result<Run, StageError> {
    let mut report = Report { input_digest: digest, ..Default::default() };
    let mut clock = Clock(Instant::now());

    let cubical = build_cubical_complex(image);
    let surface = boundary_subcomplex(&cubical);
    report.counts = CellCounts { cubical: cubical.counts(), surface: surface.counts(), polyhedral: None };
    clock.lap(&mut report, "build");

    let mut out = Run { cubical, surface, simplification: None, model: None, pairing: None, report };
    if through >= Stage::Simplify && config.diagonal == Diagonal::Polygon {
        let s = simplify(&out.surface, image, config.termination);
        out.report.counts.polyhedral = Some(s.complex.counts());
        out.report.critical_vertices = s.critical.len();
        out.report.termination = Some(termination_config(config.termination));
        out.simplification = Some(s);
        clock.lap(&mut out.report, "simplify");
    } else if through >= Stage::Simplify {
        out.report.critical_vertices = polycup_core::find_critical_vertices(image, &out.surface).len();
    }
    if through >= Stage::Homology {
        let m = compute_at_model(out.working());
        out.report.betti = Some(m.betti());
        out.model = Some(m);
        clock.lap(&mut out.report, "homology");
    }
    if through >= Stage::Cup {
        let diag = config.diagonal;
        let cp = cup_matrix(out.working(), out.model.as_ref().unwrap(), diag)
            .map_err(|source| StageError { stage: Stage::Cup, source })?;
        out.report.diagonal = Some(diagonal_name(diag).into());
        out.report.cup = triples(&cp);
        out.report.pairing_rank = Some(pairing_rank(&cp));
        out.pairing = Some(cp);
        clock.lap(&mut out.report, "cup");
    }
    Ok(out)
}

pub fn diagonal_name(d: Diagonal) -> &'static str {
    match d {
        Diagonal::Polygon => "polygon",
        Diagonal::Serre => "serre",
    }
}

/// Betti numbers and pairing rank by the Serre diagonal on the surface.
fn serre_path(surface: &CellComplex) -> Result<(Betti, usize, bool), polycup_core::Error> {
    let m = compute_at_model(surface);
    let cp = cup_matrix(surface, &m, Diagonal::Serre)?;
    let ok = verify_structure_explicit(surface, &m, Diagonal::Serre, &cp)?.passed();
    Ok((m.betti(), pairing_rank(&cp), ok))
}

/// Cross-checks a completed run against independent computations and
/// records the outcomes in `run.report.checks`. With `full`, also runs the
/// contraction identity suite and the per-polygon diagonal checks.
pub fn cross_check(run: &mut Run, full: bool) -> Result<(), StageError> {
    let err = |source| StageError { stage: Stage::Cup, source };
    let mut checks = std::mem::take(&mut run.report.checks);
    let mut clock = Clock(Instant::now());
    let surface_betti = rank_oracle(&run.surface);
    let working_betti = rank_oracle(run.working());
    checks.insert("betti_preserved".into(), surface_betti == working_betti);
    if let Some(betti) = run.report.betti {
        checks.insert("betti_matches_rank_oracle".into(), betti == working_betti);
        let (serre_betti, serre_rank, serre_ok) = serre_path(&run.surface).map_err(err)?;
        checks.insert("path_independent_betti".into(), betti == serre_betti);
        checks.insert("serre_structure".into(), serre_ok);
        if let Some(rank) = run.report.pairing_rank {
            checks.insert("path_independent_pairing_rank".into(), rank == serre_rank);
        }
    }
    if let (Some(m), Some(cp)) = (&run.model, &run.pairing) {
        let diag = run.report.diagonal.as_deref() == Some("serre");
        let diag = if diag { Diagonal::Serre } else { Diagonal::Polygon };
        let ok = verify_structure_explicit(run.working(), m, diag, cp).map_err(err)?.passed();
        checks.insert("cup_structure".into(), ok);
    }

    if full {
        let x = run.working();
        checks.insert("surface_valid".into(), run.surface.validate().is_empty());
        checks.insert("complex_valid".into(), x.validate().is_empty());
        if let Some(m) = &run.model {
            checks.insert("model_identities".into(), m.check(x).map_err(err)?.is_empty());
        }
        if let Some(s) = &run.simplification {
            let c = s.contraction();
            checks.insert("simplify_identities".into(), c.check(&run.surface, &s.complex).map_err(err)?.is_empty());
            let mut coderivation = true;
            let mut oracle = true;
            for p in s.complex.cells_of_dim(2) {
                coderivation &= coderivation_defect(x, p, Diagonal::Polygon).map_err(err)?.is_empty();
                oracle &= polygon_diagonal(x, p).map_err(err)? == aw_fan_oracle(x, p).map_err(err)?;
            }
            checks.insert("polygon_coderivation".into(), coderivation);
            checks.insert("polygon_oracle_equivalence".into(), oracle);
        }
        let mut serre = true;
        for q in run.surface.cells_of_dim(2) {
            serre &= coderivation_defect(&run.surface, q, Diagonal::Serre).map_err(err)?.is_empty();
        }
        checks.insert("serre_coderivation".into(), serre);
    }
    run.report.checks = checks;
    clock.lap(&mut run.report, "verify");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use polycup_core::fixtures;

    #[test]
    fn stages_fill_the_report_progressively() {
        let img = fixtures::torus();
        let built = run(&img, String::new(), Config::default(), Stage::Build).unwrap();
        assert!(built.report.betti.is_none() && built.report.counts.polyhedral.is_none());
        let full = run(&img, String::new(), Config::default(), Stage::Cup).unwrap();
        assert_eq!(full.report.betti, Some([1, 2, 1]));
        assert_eq!(full.report.cup, [CupTriple { i: 0, j: 1, k: 0 }]);
        assert_eq!(full.report.pairing_rank, Some(2));
    }

    #[test]
    fn cross_check_flags_a_wrong_answer() {
        let mut r = run(&fixtures::two_tori(), String::new(), Config::default(), Stage::Cup).unwrap();
        r.report.pairing_rank = Some(3);
        cross_check(&mut r, false).unwrap();
        assert!(!r.report.passed());
        assert!(!r.report.checks["path_independent_pairing_rank"]);
        assert!(r.report.checks["betti_matches_rank_oracle"]);
    }

    #[test]
    fn serre_skips_simplification() {
        let cfg = Config { diagonal: Diagonal::Serre, ..Config::default() };
        let mut r = run(&fixtures::torus(), String::new(), cfg, Stage::Cup).unwrap();
        assert!(r.simplification.is_none());
        assert_eq!(r.report.pairing_rank, Some(2));
        cross_check(&mut r, true).unwrap();
        assert!(r.report.passed(), "{:?}", r.report.checks);
    }
}
