/// Limits guarding the exhaustive routines.
///
/// Exceeding a cap is reported as [`Error::SizeCapExceeded`](crate::Error::SizeCapExceeded).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest carrier produced by `product`.
    pub max_carrier: usize,
    /// Largest number of entries in a single operation table.
    pub max_table_entries: usize,
    /// Largest translation semigroup.
    pub max_semigroup: usize,
    /// Largest number of ternary term operations in a clone.
    pub max_clone: usize,
    /// Largest carrier for which all partitions are enumerated.
    pub max_partition_carrier: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_carrier: 4096,
            max_table_entries: 1 << 24,
            max_semigroup: 1_000_000,
            max_clone: 100_000,
            max_partition_carrier: 8,
        }
    }
}
