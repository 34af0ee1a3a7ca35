//! Lower sets (downward closed sets) in `Z_+^d`: canonical enumeration, exact
//! counts `p_d(n)`, the explicit bounds on those counts, and universal
//! sampling discretization of the exponential subspaces they index.

pub mod bounds;
pub mod count;
pub mod discretization;
pub mod enumerate;
pub mod error;
pub mod lattice;
pub mod oracles;
pub mod partition;
pub mod slice;
pub mod staircase;

pub use count::BigCount;
pub use enumerate::{count_dfs, count_lower_sets, enumerate_lower_sets, CountMethod, LowerSets, DEFAULT_NODE_BUDGET};
pub use error::{Error, Result};
pub use lattice::{is_lower_set, LowerSet, Point};
pub use oracles::{partition_oracle_2d, plane_partition_oracle_3d};
pub use partition::{from_partition, to_partition, Partition};
pub use slice::{slice_decompose, Slice, SliceDecomposition};
