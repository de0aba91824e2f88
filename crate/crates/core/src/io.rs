//! JSON wire documents. Field order is fixed by struct declaration so
//! every emitter produces byte-stable output; loads validate document
//! structure (declared order, rectangular tables), while value ranges
//! and axioms are the validators' job.

use crate::brace::DualWeakLeftBrace;
use crate::braided::BraidedTable;
use crate::post::PostTable;
use crate::relative::RelativeRbSystem;
use crate::semigroup::{ElementMap, FiniteSemigroup, TableError};
use crate::ybe::YbeMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Structural problem in a wire document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WireError {
    #[error("declared order {declared} does not match {rows} table rows")]
    OrderMismatch { declared: usize, rows: usize },
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("{what} has {rows} rows, expected {expected}")]
    RowCount { what: &'static str, rows: usize, expected: usize },
    #[error("{what} row {row} has {len} entries, expected {expected}")]
    RaggedRow { what: &'static str, row: usize, len: usize, expected: usize },
}

fn rectangular(what: &'static str, rows: &[Vec<usize>], expected: usize) -> Result<(), WireError> {
    if rows.len() != expected {
        return Err(WireError::RowCount { what, rows: rows.len(), expected });
    }
    for (row, entries) in rows.iter().enumerate() {
        if entries.len() != expected {
            return Err(WireError::RaggedRow { what, row, len: entries.len(), expected });
        }
    }
    Ok(())
}

fn flatten(rows: &[Vec<usize>]) -> Vec<usize> {
    rows.iter().flatten().copied().collect()
}

/// `{"name": …, "order": n, "add": [[…]]}`; `name` is omitted when
/// absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub order: usize,
    pub add: Vec<Vec<usize>>,
}

impl SemigroupWire {
    pub fn from_semigroup(sg: &FiniteSemigroup, name: Option<String>) -> Self {
        SemigroupWire { name, order: sg.order(), add: sg.rows() }
    }

    pub fn to_semigroup(&self) -> Result<FiniteSemigroup, WireError> {
        if self.add.len() != self.order {
            return Err(WireError::OrderMismatch { declared: self.order, rows: self.add.len() });
        }
        Ok(FiniteSemigroup::from_rows(&self.add)?)
    }
}

/// `{"map": […]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapWire {
    pub map: Vec<usize>,
}

impl MapWire {
    pub fn from_map(map: &ElementMap) -> Self {
        MapWire { map: map.as_slice().to_vec() }
    }
}

/// `{"add": [[…]], "circ": [[…]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceWire {
    pub add: Vec<Vec<usize>>,
    pub circ: Vec<Vec<usize>>,
}

impl BraceWire {
    pub fn from_brace(brace: &DualWeakLeftBrace) -> Self {
        BraceWire {
            add: brace.add_table().base().rows(),
            circ: brace.circ_table().base().rows(),
        }
    }

    /// The two operation tables, ready for the brace validator.
    pub fn to_tables(&self) -> Result<(FiniteSemigroup, FiniteSemigroup), WireError> {
        Ok((FiniteSemigroup::from_rows(&self.add)?, FiniteSemigroup::from_rows(&self.circ)?))
    }
}

/// `{"out1": [[…]], "out2": [[…]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YbeWire {
    pub out1: Vec<Vec<usize>>,
    pub out2: Vec<Vec<usize>>,
}

impl YbeWire {
    pub fn from_ybe(map: &YbeMap) -> Self {
        YbeWire { out1: map.out1_rows(), out2: map.out2_rows() }
    }

    pub fn to_ybe(&self) -> Result<YbeMap, WireError> {
        Ok(YbeMap::from_rows(&self.out1, &self.out2)?)
    }
}

/// `{"add": [[…]], "rhd": [[…]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostWire {
    pub add: Vec<Vec<usize>>,
    pub rhd: Vec<Vec<usize>>,
}

impl PostWire {
    pub fn from_post(post: &PostTable) -> Self {
        PostWire { add: post.add_table().base().rows(), rhd: post.rhd_rows() }
    }

    /// The additive table and the flattened `▷` table, ready for the
    /// post validator.
    pub fn to_parts(&self) -> Result<(FiniteSemigroup, Vec<usize>), WireError> {
        let add = FiniteSemigroup::from_rows(&self.add)?;
        rectangular("rhd", &self.rhd, add.order())?;
        Ok((add, flatten(&self.rhd)))
    }
}

/// `{"T": …, "S": …, "phi": [[…] per S-element], "R": […]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeWire {
    #[serde(rename = "T")]
    pub t: SemigroupWire,
    #[serde(rename = "S")]
    pub s: SemigroupWire,
    pub phi: Vec<Vec<usize>>,
    #[serde(rename = "R")]
    pub r: Vec<usize>,
}

impl RelativeWire {
    pub fn from_system(
        sys: &RelativeRbSystem,
        t_name: Option<String>,
        s_name: Option<String>,
    ) -> Self {
        let action = sys.action();
        RelativeWire {
            t: SemigroupWire::from_semigroup(action.t().base(), t_name),
            s: SemigroupWire::from_semigroup(action.s().base(), s_name),
            phi: action.maps().iter().map(|m| m.as_slice().to_vec()).collect(),
            r: sys.r().as_slice().to_vec(),
        }
    }

    /// Carrier tables plus the raw `phi`/`R` data, ready for the
    /// table-level validator.
    pub fn to_parts(
        &self,
    ) -> Result<(FiniteSemigroup, FiniteSemigroup, Vec<Vec<usize>>, Vec<usize>), WireError> {
        let t = self.t.to_semigroup()?;
        let s = self.s.to_semigroup()?;
        Ok((t, s, self.phi.clone(), self.r.clone()))
    }
}

/// `{"circ": [[…]], "left": [[…]], "right": [[…]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidedWire {
    pub circ: Vec<Vec<usize>>,
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
}

impl BraidedWire {
    pub fn from_braided(braided: &BraidedTable) -> Self {
        BraidedWire {
            circ: braided.circ_table().base().rows(),
            left: braided.left_rows(),
            right: braided.right_rows(),
        }
    }

    /// The `∘` table and the two flattened `σ` tables, ready for the
    /// braided validator.
    pub fn to_parts(&self) -> Result<(FiniteSemigroup, Vec<usize>, Vec<usize>), WireError> {
        let circ = FiniteSemigroup::from_rows(&self.circ)?;
        rectangular("left", &self.left, circ.order())?;
        rectangular("right", &self.right, circ.order())?;
        Ok((circ, flatten(&self.left), flatten(&self.right)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn semigroup_documents_keep_their_key_order() {
        let z2 = catalog::find("z2").expect("entry").semigroup;
        let wire = SemigroupWire::from_semigroup(&z2, Some("z2".into()));
        let json = serde_json::to_string(&wire).expect("serialize");
        assert_eq!(json, r#"{"name":"z2","order":2,"add":[[0,1],[1,0]]}"#);
        let back: SemigroupWire = serde_json::from_str(&json).expect("parse");
        assert!(back.to_semigroup().expect("valid").table_eq(&z2));

        let anonymous = SemigroupWire::from_semigroup(&z2, None);
        assert_eq!(
            serde_json::to_string(&anonymous).expect("serialize"),
            r#"{"order":2,"add":[[0,1],[1,0]]}"#
        );
    }

    #[test]
    fn structural_problems_are_reported_on_load() {
        let wire = SemigroupWire { name: None, order: 3, add: vec![vec![0, 1], vec![1, 0]] };
        assert_eq!(
            wire.to_semigroup().unwrap_err(),
            WireError::OrderMismatch { declared: 3, rows: 2 }
        );

        let post = PostWire {
            add: vec![vec![0, 1], vec![1, 0]],
            rhd: vec![vec![0, 1], vec![0]],
        };
        assert_eq!(
            post.to_parts().unwrap_err(),
            WireError::RaggedRow { what: "rhd", row: 1, len: 1, expected: 2 }
        );

        let braided = BraidedWire {
            circ: vec![vec![0, 1], vec![1, 0]],
            left: vec![vec![0, 1]],
            right: vec![vec![0, 0], vec![1, 1]],
        };
        assert_eq!(
            braided.to_parts().unwrap_err(),
            WireError::RowCount { what: "left", rows: 1, expected: 2 }
        );
    }

    #[test]
    fn ybe_documents_round_trip() {
        let flip = YbeMap::flip(3);
        let wire = YbeWire::from_ybe(&flip);
        let json = serde_json::to_string(&wire).expect("serialize");
        let back: YbeWire = serde_json::from_str(&json).expect("parse");
        assert!(back.to_ybe().expect("valid").table_eq(&flip));
    }

    #[test]
    fn relative_documents_name_their_carriers() {
        let fixture = catalog::find_action("z2-on-z3-negation").expect("fixture");
        let r = vec![0, 0, 0];
        let sys = crate::relative::check_relative(
            &fixture.action,
            &ElementMap::new(3, 2, r.clone()).expect("shape"),
        )
        .expect("valid system");
        let wire = RelativeWire::from_system(&sys, Some("z3".into()), Some("z2".into()));
        let json = serde_json::to_string(&wire).expect("serialize");
        assert!(json.starts_with(r#"{"T":{"name":"z3""#));
        let (t, s, phi, r_back) = serde_json::from_str::<RelativeWire>(&json)
            .expect("parse")
            .to_parts()
            .expect("structure");
        assert_eq!(r_back, r);
        assert_eq!(phi.len(), 2);
        let again = crate::relative::check_relative_tables(&t, &s, &phi, &r_back)
            .expect("revalidates");
        assert!(again.is_strong());
    }
}
