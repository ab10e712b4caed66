//! Decide whether an explicit finite matrix group over a finite field is
//! m-big, with witnesses, and audit the counting argument behind highly
//! regular torus elements.

pub mod bigness;
pub mod cohomology;
pub mod field;
pub mod linalg;
pub mod matgroup;
pub mod modrep;
pub mod par;
pub mod poly;
pub mod rootdata;
