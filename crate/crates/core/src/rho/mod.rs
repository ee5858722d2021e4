mod cert;
mod chain;
mod families;

pub use cert::{check_certificate, ClauseReport, Containment, LocalEvidence, MethodCertificate, Status, Verdict, Witness};
pub use chain::{rho_chain, RhoChain, RhoEngine, RhoSummary, SYLOW_LIMIT};
pub use families::{composite_case_iii, default_instances, replay_all, replay_proof_certificates, rp_case, FAMILIES};
