//! The Waldhausen side: `S_•` on filtered objects, the comparison functor
//! from `D_•(k)` into the homotopy categories of diagrams, the `K_0`
//! computations and the certificates recording each check.

pub mod bfamily;
pub mod k0;
pub mod remark;
pub mod sobject;
pub mod xi;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::ringlin::{RingKind, RingSpec};

pub use bfamily::b_family_check;
pub use k0::{k0_check, k0_derivator, k0_waldhausen, AbelianGroup, KPresentation};
pub use remark::verify_remark;
pub use sobject::{apply_op, apply_op_morphism, SObject};
pub use xi::{independence_check, verify_iso1, verify_iso2, XiLevel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

/// The outcome of one check; fields serialize in alphabetical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub cap: Option<u32>,
    pub check: String,
    pub n: Option<usize>,
    pub notes: Vec<String>,
    pub p: u32,
    pub ring: String,
    pub status: Status,
    pub tables: BTreeMap<String, Vec<Vec<i64>>>,
    pub witnesses: Vec<String>,
}

impl Certificate {
    pub fn new(check: &str, ring: String, p: u32, n: Option<usize>) -> Certificate {
        Certificate {
            cap: None,
            check: check.into(),
            n,
            notes: vec![],
            p,
            ring,
            status: Status::Pass,
            tables: BTreeMap::new(),
            witnesses: vec![],
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Records a failed condition; the certificate fails.
    pub fn fail(&mut self, witness: String) {
        self.status = Status::Fail;
        self.witnesses.push(witness);
    }

    pub fn require(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok {
            self.fail(witness());
        }
    }

    pub fn table(&mut self, name: &str, rows: Vec<Vec<i64>>) {
        self.tables.insert(name.into(), rows);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

pub(crate) fn usize_table(t: &[Vec<usize>]) -> Vec<Vec<i64>> {
    t.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()
}

/// The command-line name of a ring family.
pub fn ring_name(ring: RingSpec) -> String {
    match ring.kind {
        RingKind::FieldFp => "fp",
        RingKind::FpEps => "fp-eps",
        RingKind::ZModP2 => "zp2",
    }
    .into()
}
