//! Truncated graded series `Q[N^⊕]/(δ > k)`, the Poisson bracket, and the
//! tropical vertex group acting by Poisson automorphisms.

mod auto;
mod factorize;
mod series;

pub use auto::{flow, poisson_bracket, wall_auto, Hamiltonian, PoissonAuto};
pub use factorize::factorize;
pub use series::TruncSeries;

pub(crate) use auto::check_wall_function as wall_auto_check;
