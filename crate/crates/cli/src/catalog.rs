//! Built-in algebras and forms, stored in the same text format as files.

use jjcoh_core::Algebra;
use jjcoh_core::RatMatrix;

use crate::parse::{parse_algebra, parse_form};

pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: CatalogKind,
    pub note: &'static str,
    pub source: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogKind {
    Algebra,
    /// A bilinear form on the named algebra.
    Form(&'static str),
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "J4",
        kind: CatalogKind::Algebra,
        note: "four-dimensional nilpotent Jacobi-Jordan algebra A_{1,4}",
        source: "dim 4\ne1*e1 = 1 e2\ne1*e3 = 1 e4\n",
    },
    CatalogEntry {
        name: "A12+A12",
        kind: CatalogKind::Algebra,
        note: "direct sum of two copies of A_{1,2}; the generic fibre of J4 + t c1",
        source: "dim 4\ne1*e1 = 1 e2\ne3*e3 = 1 e4\n",
    },
    CatalogEntry {
        name: "N3",
        kind: CatalogKind::Algebra,
        note: "three-dimensional algebra with no nondegenerate invariant form",
        source: "dim 3\ne1*e1 = 1 e3\ne2*e2 = 1 e3\n",
    },
    CatalogEntry {
        name: "J4.B",
        kind: CatalogKind::Form("J4"),
        note: "invariant scalar product B(e1,e4) = B(e2,e3) = 1",
        source: "dim 4\ne1 e4 = 1\ne2 e3 = 1\n",
    },
    CatalogEntry {
        name: "A12+A12.B",
        kind: CatalogKind::Form("A12+A12"),
        note: "invariant scalar product B(e1,e2) = B(e3,e4) = 1",
        source: "dim 4\ne1 e2 = 1\ne3 e4 = 1\n",
    },
];

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

/// Catalog sources are fixed, so a parse failure here is a bug.
pub fn algebra(name: &str) -> Option<Algebra> {
    let e = entry(name)?;
    (e.kind == CatalogKind::Algebra)
        .then(|| parse_algebra(&format!("catalog:{name}"), e.source).expect("catalog algebra parses"))
}

pub fn form(name: &str) -> Option<RatMatrix> {
    let e = entry(name)?;
    matches!(e.kind, CatalogKind::Form(_))
        .then(|| parse_form(&format!("catalog:{name}"), e.source).expect("catalog form parses").1)
}
