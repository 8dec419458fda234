//! Homology reports in table, JSON, and CSV form.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::homalg::{homology, AbelianGroup, ChainComplex};
use crate::schubert::{build_complex, ComplexError};
use crate::weyl::FlagSignature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub dim: usize,
    pub free_rank: usize,
    /// Invariant factors, ascending.
    pub torsion: Vec<u64>,
}

impl GroupRecord {
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::from_cyclic_orders(self.free_rank, &self.torsion)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub signature: Vec<usize>,
    pub ambient: usize,
    pub groups: Vec<GroupRecord>,
    pub cells: Vec<usize>,
    pub euler: i64,
}

impl HomologyReport {
    pub fn compute(sig: &FlagSignature) -> Result<Self, ComplexError> {
        let complex = build_complex(sig)?;
        let groups = homology(&complex)
            .into_iter()
            .enumerate()
            .map(|(dim, g)| GroupRecord { dim, free_rank: g.free_rank(), torsion: g.invariant_factors().to_vec() })
            .collect();
        Ok(HomologyReport {
            signature: sig.dims().to_vec(),
            ambient: sig.ambient_dim(),
            groups,
            cells: complex.cell_counts(),
            euler: complex.euler_characteristic(),
        })
    }

    pub fn homology(&self) -> Vec<AbelianGroup> {
        self.groups.iter().map(GroupRecord::group).collect()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.to_table(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
        }
    }

    fn signature_text(&self) -> String {
        self.signature.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    }

    fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "signature ({}) in R^{}", self.signature_text(), self.ambient).unwrap();
        writeln!(out, "{:>4}  {:>6}  H_dim", "dim", "cells").unwrap();
        for (g, cells) in self.groups.iter().zip(&self.cells) {
            writeln!(out, "{:>4}  {:>6}  {}", g.dim, cells, g.group()).unwrap();
        }
        writeln!(out, "euler characteristic: {}", self.euler).unwrap();
        out
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("dim,cells,free_rank,torsion\n");
        for (g, cells) in self.groups.iter().zip(&self.cells) {
            let torsion: Vec<String> = g.torsion.iter().map(|t| t.to_string()).collect();
            writeln!(out, "{},{},{},{}", g.dim, cells, g.free_rank, torsion.join(";")).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let r = HomologyReport::compute(&FlagSignature::projective(3).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["signature"], serde_json::json!([1]));
        assert_eq!(v["ambient"], 3);
        assert_eq!(v["groups"][1], serde_json::json!({"dim": 1, "free_rank": 0, "torsion": [2]}));
        assert_eq!(v["cells"], serde_json::json!([1, 1, 1]));
        assert_eq!(v["euler"], 1);
    }

    #[test]
    fn csv_and_table() {
        let r = HomologyReport::compute(&FlagSignature::complete(3).unwrap()).unwrap();
        let csv = r.render(Format::Csv);
        assert_eq!(csv, "dim,cells,free_rank,torsion\n0,1,1,\n1,2,0,2;2\n2,2,0,\n3,1,1,\n");
        let table = r.render(Format::Table);
        assert!(table.contains("(Z/2)^2"));
        assert!(table.contains("euler characteristic: 0"));
    }
}
