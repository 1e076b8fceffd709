//! Equilibrium analysis of finite strategic and Bayesian games under three
//! signaling regimes: no signals (Nash), classical correlated signals
//! (correlated equilibrium), and quantum signals (quantum correlated
//! equilibrium), plus certification of when quantum signals strictly beat
//! every classical correlated equilibrium via local-hidden-variable
//! infeasibility.
//!
//! All classical game arithmetic is exact over arbitrary-precision rationals;
//! quantum amplitudes and Born probabilities use `f64` with stated tolerances.
//!
//! Module map:
//! - [`rational`]: the exact scalar type and parsing/formatting helpers
//! - [`linalg`]: exact dense linear solving (unique / parametric / inconsistent)
//! - [`lp`]: exact simplex with Bland's rule and Farkas infeasibility certificates
//! - [`game`]: strategic games, Bayesian games, the agent-form reduction
//! - [`nash`]: pure and mixed Nash enumeration via bipartite support enumeration
//! - [`ce`]: correlated equilibria, the obedience LP, Nash payoff hulls
//! - [`quantum`]: pure states, projective spin measurements, Born distributions
//! - [`qce`]: quantum correlated equilibria and exhaustive deviation search
//! - [`lhv`]: local-hidden-variable feasibility, Bell certificates, CHSH

pub mod ce;
pub mod game;
pub mod lhv;
pub mod linalg;
pub mod lp;
pub mod nash;
pub mod qce;
pub mod quantum;
pub mod rational;

pub use rational::Rational;
