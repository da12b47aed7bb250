//! Presented `k`-linear categories: the mesh category of type `A_{n+1}`, the
//! bimodule `D_n`, semidirect products, zero objects, additive completions
//! and the simplicial family `D_•(k)`.

pub mod bimodule;
pub mod fincat;
pub mod presented;
pub mod simplicial;

pub use bimodule::{add_zero, build_dn, dn_predicate, semidirect, Bimodule};
pub use fincat::{AddMor, Additive, Arrow, FinCat, Label, Mor, Obj};
pub use presented::{build_mesh, mesh_hom_predicate, MeshCategory, PresentedCategory, Relation};
pub use simplicial::{
    check_simplicial_identities, level_objects, object_map, op_on_object, simplicial_family, FaceZero, Level,
    LinFunctor, Op, SimplicialFamily,
    SimplicialReport,
};
