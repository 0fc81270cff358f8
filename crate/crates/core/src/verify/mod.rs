//! Exhaustive checking of the module-theoretic claims on bounded grids.

mod claims;
mod engine;
mod grid;
mod report;

pub use claims::{expects_failure, lookup, Claim, CLAIMS};
pub use engine::Engine;
pub use grid::{enumerate_modules, enumerate_submodules, GridSpec, FREE_MULTIPLE_BOX};
pub use report::{ClaimReport, Counterexample, Skip, SuiteReport, Verdict, LIST_CAP, SUITE_HEADER};

use crate::adic::DEFAULT_KMAX;
use crate::error::Result;
use claims::{evaluate, Ctx, Outcome};

/// Evaluate one claim over one grid with a fresh cache.
pub fn check_claim(claim_id: &str, grid: &GridSpec) -> Result<ClaimReport> {
    let engine = Engine::new(DEFAULT_KMAX);
    check_claim_with(&engine, claim_id, grid)
}

/// Evaluate one claim with a shared cache; `engine` must only ever see one grid's ring.
pub fn check_claim_with(engine: &Engine, claim_id: &str, grid: &GridSpec) -> Result<ClaimReport> {
    let claim = lookup(claim_id)?;
    let ctx = Ctx::new(engine, grid)?;
    let eval = evaluate(claim.id, &ctx)?;
    let mut report = ClaimReport {
        claim_id: claim.id.to_string(),
        ring: grid.ring,
        statement: claim.statement.to_string(),
        expected: if expects_failure(claim.id, grid.ring) {
            Verdict::Fail
        } else {
            Verdict::Pass
        },
        verdict: Verdict::Pass,
        instances_checked: eval.outcomes.len(),
        vacuous: 0,
        counterexample_count: 0,
        counterexamples: Vec::new(),
        skipped_count: 0,
        skipped: Vec::new(),
        anchor_witness: eval.anchor_witness,
        note: eval.note,
    };
    for o in eval.outcomes {
        match o {
            Outcome::Vacuous => report.vacuous += 1,
            Outcome::Holds => {}
            Outcome::Violated(c) => {
                report.counterexample_count += 1;
                if report.counterexamples.len() < LIST_CAP {
                    report.counterexamples.push(c);
                }
            }
            Outcome::Skipped(s) => {
                report.skipped_count += 1;
                if report.skipped.len() < LIST_CAP {
                    report.skipped.push(s);
                }
            }
        }
    }
    report.verdict = if report.counterexample_count > 0 {
        Verdict::Fail
    } else if report.skipped_count > 0 {
        Verdict::Partial
    } else {
        Verdict::Pass
    };
    Ok(report)
}

/// Every listed claim on every grid, ordered by claim id and then grid.
/// Claim ids are validated before any work starts.
pub fn run_suite(grids: &[GridSpec], claim_ids: &[&str]) -> Result<SuiteReport> {
    let mut ids: Vec<&'static str> = claim_ids
        .iter()
        .map(|id| lookup(id).map(|c| c.id))
        .collect::<Result<_>>()?;
    ids.sort_unstable();
    ids.dedup();
    let engines: Vec<Engine> = grids.iter().map(|_| Engine::new(DEFAULT_KMAX)).collect();
    let mut reports = Vec::with_capacity(ids.len() * grids.len());
    for id in ids {
        for (grid, engine) in grids.iter().zip(&engines) {
            reports.push(check_claim_with(engine, id, grid)?);
        }
    }
    Ok(SuiteReport { reports })
}

/// Ids of every registered claim.
pub fn all_claim_ids() -> Vec<&'static str> {
    CLAIMS.iter().map(|c| c.id).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::ring::RingSpec;

    fn small(ring: RingSpec, modules: &[&str], ideals: &[i64]) -> GridSpec {
        GridSpec {
            ring,
            max_torsion_order: 16,
            max_free_rank: 1,
            ideal_generators: ideals.to_vec(),
            module_whitelist: Some(modules.iter().map(|s| s.to_string()).collect()),
        }
    }

    #[test]
    fn singleton_grid_gives_one_instance() {
        let g = small(RingSpec::Integers, &["Z/2"], &[2]);
        let r = check_claim("tensor-coreduced", &g).unwrap();
        assert_eq!(r.instances_checked, 1);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.expected, Verdict::Pass);
        assert!(r.is_expected());
    }

    #[test]
    fn unknown_claims_are_rejected_before_work() {
        let g = small(RingSpec::Integers, &["Z/2"], &[2]);
        assert_eq!(
            check_claim("no-such-claim", &g).unwrap_err(),
            Error::UnknownClaim("no-such-claim".into())
        );
        assert!(matches!(
            run_suite(&[g], &["tensor-coreduced", "nope"]),
            Err(Error::UnknownClaim(_))
        ));
    }

    #[test]
    fn empty_claim_list_gives_empty_summary() {
        let suite = run_suite(&GridSpec::defaults(), &[]).unwrap();
        assert!(suite.reports.is_empty());
        assert!(suite.all_expected());
        assert!(suite.to_text().ends_with("0 reports, 0 unexpected\n"));
        assert_eq!(suite.to_json_lines().lines().count(), 1);
    }

    #[test]
    fn extension_witness_on_small_integer_grid() {
        let g = small(RingSpec::Integers, &["Z", "Z/2", "Z/4"], &[2]);
        for id in ["extension-closure-R", "extension-closure-C"] {
            let r = check_claim(id, &g).unwrap();
            assert_eq!(r.verdict, Verdict::Fail, "{id}");
            assert_eq!(r.expected, Verdict::Fail, "{id}");
            assert_eq!(r.anchor_witness, Some(true), "{id}");
            let first = &r.counterexamples[0];
            assert_eq!((first.m.as_str(), first.a.as_str()), ("Z", "(2)"), "{id}");
            assert!(r.is_expected());
        }
    }

    #[test]
    fn extension_claims_hold_over_regular_ring() {
        let g = GridSpec::default_modular(6).unwrap();
        for id in ["extension-closure-R", "extension-closure-C"] {
            let r = check_claim(id, &g).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{id}");
            assert_eq!(r.expected, Verdict::Pass, "{id}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let g = small(
            RingSpec::Integers,
            &["Z", "Z/2", "Z/4", "Z/2 + Z/2"],
            &[0, 2],
        );
        let ids = ["equiv-coreduced-wrt", "glh-fastpath", "closure-sub"];
        let a = run_suite(std::slice::from_ref(&g), &ids).unwrap();
        let b = run_suite(&[g], &ids).unwrap();
        assert_eq!(a.to_json_lines(), b.to_json_lines());
        assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn suite_orders_by_claim_then_grid() {
        let grids = [
            small(RingSpec::modulo(6).unwrap(), &["Z/2", "Z/3"], &[2]),
            small(RingSpec::Integers, &["Z/2"], &[2]),
        ];
        let suite = run_suite(
            &grids,
            &["tensor-coreduced", "closure-sums", "closure-sums"],
        )
        .unwrap();
        let order: Vec<String> = suite
            .reports
            .iter()
            .map(|r| format!("{}@{}", r.claim_id, r.ring))
            .collect();
        assert_eq!(
            order,
            [
                "closure-sums@Z/6",
                "closure-sums@Z",
                "tensor-coreduced@Z/6",
                "tensor-coreduced@Z"
            ]
        );
    }
}
