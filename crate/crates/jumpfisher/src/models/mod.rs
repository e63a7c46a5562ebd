//! Concrete physical models.
//!
//! Three systems exercise the generic machinery from different angles:
//!
//! * [`driven_qubit`] — a resonantly driven two-level system coupled to a
//!   thermal bath; the workhorse for the stochastic-trajectory pipeline.
//! * [`field_sensor`] — a thermal qubit estimating a transverse field;
//!   every conditional-information quantity has a closed form, making it
//!   the strongest end-to-end oracle for the SLD/CQFI code.
//! * [`gaussian`] — force sensing with displaced Gaussian states under a
//!   weak position measurement; closed-form QFI plus a quadrature-based
//!   conditional value that must coincide with it outcome by outcome.

pub mod driven_qubit;
pub mod field_sensor;
pub mod gaussian;
