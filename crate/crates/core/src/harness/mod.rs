//! Instance generators and exact checkers for the star identities:
//! Conway identities, group identities, the commutative identities and the
//! inductive laws.

mod commutative;
mod conway;
mod group;
mod inductive;
pub mod random;
mod report;
mod runner;

pub use commutative::{
    check_commutative, generate_commutative_instance, CommutativeInstance, Side,
};
pub use conway::check_conway;
pub use group::{check_group_identity, group_matrix, CayleyTable};
pub use inductive::{check_inductive_laws, check_linear_solutions};
pub use report::{CheckReport, Verdict};
pub use runner::{run_suite, Suite, SuiteConfig};
