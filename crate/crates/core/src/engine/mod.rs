mod checks;
mod decalage;
mod index;
mod quartet;
mod relation;
mod spectral;
mod split;

pub use checks::{check_abutment, check_deligne, check_euler, check_next_page};
pub use decalage::decalage;
pub use index::{em_to_ls, index_transform, index_transform_inverse};
pub use quartet::{zassenhaus_dims, zassenhaus_quartet, zassenhaus_quartet_sum, Quartet, TriDifferential, TriEntry, TriPage};
pub use relation::{check_decalage_relation, compare_e1, DecalageRelation, Failure};
pub use spectral::{
    compute_spectral_sequence, compute_spectral_sequence_sum, degeneration_page, AbutmentDegree, Degeneration, Differential, Page, PageEntry,
    SpectralSequence,
};
