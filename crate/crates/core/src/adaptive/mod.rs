//! Adaptive strategy trees, their exact evaluation, and the optimal
//! adaptive strategy.

mod dp;
mod eval;
mod tree;

pub use dp::{opt_adaptive, opt_adaptive_with_limit, random_tree};
pub use eval::{adap_online_value, adap_value, alg_value};
pub(crate) use eval::FmaxCache;
pub use tree::{LeafPath, StemView, StrategyTree};
