//! Stabilizer and logical-operator listings for the four small structures,
//! in the reference qubit numbering.

pub struct Listing {
    pub n: usize,
    pub stabilizers: &'static [&'static str],
    pub logical_pairs: &'static [(&'static str, &'static str)],
    /// `(n, k, d)`
    pub declared: (usize, usize, usize),
    /// Column heights (in unit cells) of the equivalent column stack.
    pub columns: &'static [usize],
}

pub const UNIT: Listing = Listing {
    n: 6,
    stabilizers: &["X1X2X3X4", "X3X4X5X6", "Z1Z3Z5", "Z2Z4Z6"],
    logical_pairs: &[("X1X3", "Z1Z4Z6"), ("X4X6", "Z2Z4Z5")],
    declared: (6, 2, 2),
    columns: &[1],
};

/// The even Z-ancilla of the first copy is shared with the odd Z-ancilla of
/// the second, so it measures the merged operator `Z2Z4Z6Z7Z9Z11`. With the
/// unmerged `Z2Z4Z6` the fifth pair below would not be a valid logical pair.
pub const TWO_HORIZONTAL: Listing = Listing {
    n: 12,
    stabilizers: &["X1X2X3X4", "X3X4X5X6", "X7X8X9X10", "X9X10X11X12", "Z1Z3Z5", "Z2Z4Z6Z7Z9Z11", "Z8Z10Z12"],
    logical_pairs: &[
        ("X2X6", "Z1Z4Z6"),
        ("X4X6", "Z1Z4Z5"),
        ("X7X11", "Z8Z9Z11"),
        ("X9X11", "Z8Z9Z12"),
        ("X2X7", "Z2Z4Z6"),
    ],
    declared: (12, 5, 2),
    columns: &[1, 1],
};

pub const TWO_VERTICAL: Listing = Listing {
    n: 10,
    stabilizers: &["X1X2X3X4", "X3X4X5X6X7X8", "X7X8X9X10", "Z1Z3Z5", "Z2Z4Z6", "Z5Z7Z9", "Z6Z8Z10"],
    logical_pairs: &[("X2X6X8", "Z1Z4Z8Z9"), ("X2X6X10", "Z5Z7Z10"), ("X4X6X8", "Z2Z3Z6")],
    declared: (10, 3, 3),
    columns: &[2],
};

pub const GRID_2X2: Listing = Listing {
    n: 20,
    stabilizers: &[
        "X1X2X3X4",
        "X3X4X5X6X7X8",
        "X7X8X9X10",
        "X11X12X13X14",
        "X13X14X15X16X17X18",
        "X17X18X19X20",
        "Z1Z3Z5",
        "Z2Z4Z6Z11Z13Z15",
        "Z5Z7Z9",
        "Z6Z8Z10Z15Z17Z19",
        "Z12Z14Z16",
        "Z16Z18Z20",
    ],
    logical_pairs: &[
        ("X1X5X9", "Z1Z3Z7Z10"),
        ("X3X5X7", "Z1Z3Z8Z9"),
        ("X4X6X17", "Z1Z4Z8Z9"),
        ("X2X6X17", "Z2Z3Z7Z10"),
        ("X6X11X19", "Z15Z18Z19"),
        ("X11X15X19", "Z12Z13Z15"),
        ("X6X11X17", "Z11Z13Z18Z19"),
        ("X14X16X20", "Z12Z13Z16"),
    ],
    declared: (20, 8, 3),
    columns: &[2, 2],
};

pub const ALL: [(&str, &Listing); 4] =
    [("unit", &UNIT), ("two_horizontal", &TWO_HORIZONTAL), ("two_vertical", &TWO_VERTICAL), ("grid_2x2", &GRID_2X2)];

pub fn for_columns(heights: &[usize]) -> Option<&'static Listing> {
    ALL.iter().map(|(_, l)| *l).find(|l| l.columns == heights)
}
