//! The corrected iris flower data (150 objects, 4 features), bundled for the
//! one-vs-rest demonstration.

use crate::matrix::{DataMatrix, Labels};

const CSV: &str = include_str!("../data/iris.csv");

pub const SPECIES: [&str; 3] = ["setosa", "versicolor", "virginica"];

#[derive(Debug, Clone)]
pub struct Iris {
    pub matrix: DataMatrix,
    pub species: Vec<String>,
}

impl Iris {
    /// Label bit 1 for objects of `species`.
    pub fn one_vs_rest(&self, species: &str) -> Labels {
        Labels::new(self.species.iter().map(|s| s == species).collect())
    }
}

pub fn load() -> Iris {
    let mut lines = CSV.lines();
    let header: Vec<String> = lines.next().expect("header").split(',').map(str::to_string).collect();
    let mut rows = Vec::new();
    let mut species = Vec::new();
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let f: Vec<&str> = line.split(',').collect();
        rows.push(f[..4].iter().map(|v| v.parse().expect("numeric iris cell")).collect());
        species.push(f[4].to_string());
    }
    let matrix = DataMatrix::from_rows(&rows).expect("rectangular").with_names(header[..4].to_vec()).expect("names");
    Iris { matrix, species }
}
