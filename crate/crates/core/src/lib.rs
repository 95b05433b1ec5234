pub mod algebra;
pub mod axioms;
pub mod catalog;
pub mod connections;
pub mod decompose;
pub mod group;
pub mod io;
pub mod linalg;
pub mod report;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    struct Overview;
    #[doc = include_str!("../../../book/src/instances.md")]
    struct Instances;
    #[doc = include_str!("../../../book/src/axioms.md")]
    struct Axioms;
    #[doc = include_str!("../../../book/src/connections.md")]
    struct Connections;
    #[doc = include_str!("../../../book/src/decomposition.md")]
    struct Decomposition;
    #[doc = include_str!("../../../book/src/simplicity.md")]
    struct Simplicity;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
