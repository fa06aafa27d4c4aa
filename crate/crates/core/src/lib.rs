//! Exact arithmetic for the height-2, prime-2 Morava stabilizer group.
//!
//! Elements of W(F_4), the maximal order End(Gamma), the extended group G_2 and its
//! finite quotients are represented by residues modulo powers of two. Twisted group
//! rings over the finite quotients, Howell-form submodules and the explicit
//! differentials of the duality resolution are built on top.

pub mod endo;
pub mod error;
pub mod groupring;
pub mod gtwo;
pub mod ideals;
pub mod quotients;
pub mod resolution;
pub mod subgroups;
pub mod witt;

pub use endo::{EndoElt, Fgl};
pub use error::{MoravaError, Result};
pub use gtwo::{GElt, Order};
pub use witt::WittApprox;
