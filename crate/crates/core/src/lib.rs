pub mod field;
pub mod scalar;
pub mod linalg;
pub mod clifford;
pub mod frames;
pub mod glaoid;
pub mod slashed;
pub mod gauge;
pub mod hyperbolic;
pub mod mc;
pub mod ricci;
pub mod spinor;
pub mod suite;
