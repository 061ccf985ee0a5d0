//! Finite digital images under product adjacencies.
//!
//! The crate models finite subsets of `Z^n` with `c_u` adjacencies and the
//! four product adjacencies (normal products `NP_u`, tensor, Cartesian,
//! lexicographic), and decides continuity, isomorphism, retraction, shyness,
//! the approximate fixed point property, homotopy and multivalued continuity
//! by exhaustive search on small instances.
//!
//! ```
//! use digitop::{DigitalImage, Space, Point};
//!
//! let square = Space::with_spec(DigitalImage::window(&[0, 0], &[1, 1]).unwrap(), "T(c1,c1)").unwrap();
//! assert_eq!(square.components().len(), 2);
//! assert!(square.adjacency().adjacent(&Point::from([0, 0]), &Point::from([1, 1])).unwrap());
//! ```

pub mod adjacency;
pub mod cli;
pub mod error;
pub mod homotopy;
pub mod io;
pub mod lattice;
pub mod maps;
pub mod multivalued;
pub mod search;
pub mod space;
pub mod verifier;

mod dsu;

pub use adjacency::{dominates, domination_witness, product_image, Adjacency, AdjacencySpec, ProductKind};
pub use error::{Error, Result};
pub use homotopy::{are_homotopic, homotopy_class, homotopy_equivalent, is_homotopy, Homotopy, HomotopyEquivalence};
pub use lattice::{cu_adjacent, DigitalImage, IntegerInterval, Point};
pub use maps::{approximate_fixed_point, exists_retraction, has_afpp, is_retraction, is_shy, AfppOutcome, DigitalMap};
pub use multivalued::{
    is_continuous_multimap, is_multivalued_retraction, shy_equivalences, subdivide, MultiContinuity, MultiMap,
    Subdivision,
};
pub use search::{Search, DEFAULT_BUDGET};
pub use space::{neighborhood, sets_adjacent, Space};
