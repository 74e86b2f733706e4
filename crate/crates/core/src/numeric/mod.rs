//! General-purpose numerical kernels used by the design and verification
//! code: a small dense linear solver, adaptive quadrature, root finders and
//! an embedded Runge-Kutta integrator.

pub mod linsolve;
pub mod ode;
pub mod quad;
pub mod roots;
