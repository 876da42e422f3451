/// Size limits shared by every enumeration and solver in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order for which subgroups and tables are materialized.
    pub max_group_order: usize,
    /// Largest number of candidates a brute-force enumeration may visit.
    pub max_enumeration: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_group_order: 512, max_enumeration: 1 << 24 }
    }
}

impl Caps {
    /// Work budget for the modular linear solver, measured as
    /// `unknowns^2 * columns` residue operations.
    pub fn solver_budget(&self) -> u128 {
        self.max_enumeration as u128 * 64
    }
}
