/// Enumeration limits. Exceeding any of them is a reported error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Caps {
    /// Largest |Ext^1| whose classes may be enumerated.
    pub max_ext: u128,
    /// Largest |Hom| that may be searched exhaustively for an isomorphism.
    pub max_hom: u128,
    /// Largest |End| searched exhaustively for a splitting idempotent.
    pub max_endo: u128,
    /// Largest number of matrix tuples generated for one dimension pattern.
    pub max_enum: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_ext: 1 << 16,
            max_hom: 1 << 20,
            max_endo: 1 << 20,
            max_enum: 1 << 20,
        }
    }
}

/// How grids of independent computations are executed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}
