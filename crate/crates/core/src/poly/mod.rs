//! Laurent polynomials in the spectral variables, rational functions whose
//! denominators are products of differences `x_i − x_j`, and the slot
//! calculus for tensors valued in them.

mod laurent;
mod ratfun;
mod slots;

pub use laurent::{MLaurent, Monomial, Var, NVARS};
pub use ratfun::{Factor, PolyError, RatFun};
pub use slots::{bracket_slots, embed, flip, flip_vars, Slot, SlotFactor, SlotPair, SlotTensor};
