//! The inequality catalogue: identifiers, evaluation on instances,
//! counterexample bundles and randomized sweeps.

mod catalogue;
mod concave;
mod counterexample;
mod eval;
mod result;
mod sweep;

pub use catalogue::{parse_ids, CheckId, Family};
pub use concave::{concave_catalogue, Concave};
pub use counterexample::{det_bundle, sv_bundle, DetBundle, SvBundle};
pub use eval::{evaluate, Evaluator, Instance, Params, AZ2_R_GRID, BOUNDARY_DELTA, GA1_R_GRID, RE1_P_GRID};
pub use result::{scalar_slack, verdict_for, CheckResult, Form, UsedParams, Verdict, DEFAULT_TOL};
pub use sweep::{sweep, sweep_with_threads, CheckSummary, LinkSummary, Report, SweepConfig, SweepError, Totals, DEFAULT_SEED};
