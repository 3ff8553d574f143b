//! Example series shipped with the binary.

pub const EULER: &str = include_str!("../data/euler.gps");
pub const ZETA: &str = include_str!("../data/zeta.gps");
pub const STIRLING: &str = include_str!("../data/stirling.gps");
pub const CONVERGENT_DEMO: &str = include_str!("../data/convergent-demo.gps");
pub const GEOMETRIC: &str = include_str!("../data/geometric.gps");
pub const EXP_SQRT: &str = include_str!("../data/exp-sqrt.gps");

pub const ALL: [(&str, &str); 6] = [
    ("euler", EULER),
    ("zeta", ZETA),
    ("stirling", STIRLING),
    ("convergent-demo", CONVERGENT_DEMO),
    ("geometric", GEOMETRIC),
    ("exp-sqrt", EXP_SQRT),
];

/// Bundled convergent examples used by `roundtrip` when no file is given.
pub const CONVERGENT: [&str; 3] = ["convergent-demo", "geometric", "exp-sqrt"];

pub fn bundled(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".gps").unwrap_or(name);
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
