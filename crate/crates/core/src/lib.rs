//! Error bounds for quadrature remainders via kernel factorization.
//!
//! A remainder functional `A_μ(f) = ∫ f dμ` whose spectral function
//! `S_μ(λ) = ∫ e^{λx} dμ(x)` vanishes on the roots of a characteristic
//! polynomial `P_c` factors as `A_μ(f) = ∫_a^b D_c(f)(t) g(t) dt`, with the
//! kernel `g(t) = ∫_{[t,b]} ω_c(x - t) dμ(x)` built from the solution `ω_c` of
//! `D_c ω = 0`, `ω^{(i)}(0) = δ_{i,n-1}`. Hölder's inequality then bounds the
//! remainder by `‖D_c f‖_p ‖g‖_q`.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the `*64` aliases fix
//! the scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod charode;
pub mod error;
pub mod format;
pub mod kernels;
pub mod measure;
pub mod oracle;
pub mod rootfind;
pub mod scalar;
pub mod smooth;
pub mod zeta;

pub use bounds::{
    classical_simpson_report, holder_bound, kernel_norm, kernel_sup, norm_on_interval, sign_inequality_check,
    simpson_bound_constants, sup_norm, trapezoid_bound_constants, BoundReport, Exponent, SignCheck, SignVerdict,
    SupNorm,
};
pub use charode::{CharacteristicSpec, DiffOperator, ExpPolynomial, TaylorSplit, Term};
pub use error::{Error, Result};
pub use kernels::{Factorization, KernelRepr, SimpsonParam};
pub use measure::{Atom, Measure};
pub use oracle::{integrate_adaptive, verify_factorization, QuadratureResult, VerificationRecord};
pub use rootfind::{find_mean_value_point, rho_minus, rho_plus, tan_fixed_point, MeanValuePoint};
pub use scalar::{Cx, Real};
pub use smooth::SmoothFunction;
pub use zeta::{zeta, zeta_derivative, zeta_taylor_expansion, ZetaParams};

pub type Measure64 = Measure<f64>;
pub type ExpPolynomial64 = ExpPolynomial<f64>;
pub type CharacteristicSpec64 = CharacteristicSpec<f64>;
pub type SmoothFunction64 = SmoothFunction<f64>;
pub type ZetaParams64 = ZetaParams<f64>;
pub type SimpsonParam64 = SimpsonParam<f64>;
pub type Factorization64 = Factorization<f64>;
pub type BoundReport64 = BoundReport<f64>;
pub type VerificationRecord64 = VerificationRecord<f64>;
pub type Complex64 = Cx<f64>;
