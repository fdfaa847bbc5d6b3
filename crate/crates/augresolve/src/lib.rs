//! Chekanov–Eliashberg DGAs of Legendrian closures of positive braids over Z/2,
//! the DGA map induced by a 0-resolution, augmentations, and bilinearized
//! Legendrian contact cohomology with its A∞ operations.

pub mod augmentation;
pub mod braid;
pub mod category;
pub mod closure;
pub mod dga;
pub mod disk;
pub mod error;
pub mod fixtures;
pub mod gf2;
pub mod oracle;
pub mod resolution;
pub mod search;
pub mod sweep;

pub use braid::{resolve_crossing, torus_braid, BraidSpec, GeneratorId, Kind};
pub use closure::ClosureDiagram;
pub use dga::{differential_from_disks, Dga, DgaMap, Poly, Word};
pub use disk::{enumerate_disks, index_of, Disk, DiskQuery};
pub use error::{Error, Result};
pub use oracle::oracle_enumerate_embedded;
pub use search::{DiskCounter, Engine};
pub use augmentation::{enumerate_augmentations, AugPair, Augmentation};
pub use category::{bilinearized_matrix, cohomology, AInfinity, Cohomology, HomComplex};
pub use gf2::Gf2Matrix;
pub use resolution::{build_psi, CrossingOrder, IndexDirection, ResolutionData};
