//! Free resolutions, `Ext^1` and `Ext^2`, and the class of a 2-fold extension.

mod ch;
mod ext;
mod resolution;

pub use ch::{ch_of_map, ch_of_map_seeded, ch_of_map_with, e_morphism_check, e_obstruction, hom_e, ChTriple, EMorphism, HomE};
pub use ext::{ext, ext_functorial, Direction, ExtElement, ExtGroup};
pub use ext::ext_with_resolution;
pub use resolution::{free_resolution, lift_chain_map, FreeResolution};
