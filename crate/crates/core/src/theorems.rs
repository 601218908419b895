//! Mechanical checks of the absorption property and of the zigzag, face and
//! connectivity theorems, one report per statement.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::gem::{FlagMap, GonKind, LoopBalance};
use crate::gf2::{Gf2Subspace, Gf2Vec, LinearOp};
use crate::spaces::{space_bundle, SpaceBundle, SpaceError};
use crate::zigzag::{face_word, ptilde_word, zigzag_word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    T1a,
    T1b,
    T1c,
    T2a,
    T2b,
    T2c,
    T2d,
    T3a,
    T3b,
    T3c,
    T4,
}

impl TheoremId {
    pub fn label(self) -> &'static str {
        match self {
            TheoremId::T1a => "1a",
            TheoremId::T1b => "1b",
            TheoremId::T1c => "1c",
            TheoremId::T2a => "2a",
            TheoremId::T2b => "2b",
            TheoremId::T2c => "2c",
            TheoremId::T2d => "2d",
            TheoremId::T3a => "3a",
            TheoremId::T3b => "3b",
            TheoremId::T3c => "3c",
            TheoremId::T4 => "4",
        }
    }

    /// The statement, in the notation of the report.
    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::T1a => "V ∩ F ⊆ Z",
            TheoremId::T1b => "F ∩ Z ⊆ V",
            TheoremId::T1c => "Z ∩ V ⊆ F",
            TheoremId::T2a => "Im(c_P) = V⊥",
            TheoremId::T2b => "Ker(c_P) = V",
            TheoremId::T2c => "Im(c_P~) = F⊥",
            TheoremId::T2d => "Ker(c_P~) = F",
            TheoremId::T3a => "dim Im(c_P~ ∘ c_P) = ξ",
            TheoremId::T3b => "Im(c_P~ ∘ c_P) = V⊥ ∩ F⊥",
            TheoremId::T3c => "Ker(c_P~ ∘ c_P) = V + F",
            TheoremId::T4 => "c_P~ ∘ c_D = id",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

fn one_based<S: Serializer>(v: &Option<Gf2Vec>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_seq(v.to_one_based()),
        None => s.serialize_none(),
    }
}

/// Outcome of checking one statement on one map.
///
/// `holds` is only meaningful when `applicable`. A counterexample, when
/// present, is a vector violating the statement (serialized as 1-based edge
/// ids).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub applicable: bool,
    pub holds: bool,
    pub dims: BTreeMap<&'static str, i64>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "one_based")]
    pub counterexample: Option<Gf2Vec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl TheoremReport {
    fn not_applicable(theorem: TheoremId, reason: String) -> Self {
        Self {
            theorem,
            applicable: false,
            holds: false,
            dims: BTreeMap::new(),
            counterexample: None,
            reason: Some(reason),
        }
    }

    fn new(
        theorem: TheoremId,
        dims: &[(&'static str, i64)],
        counterexample: Option<Gf2Vec>,
    ) -> Self {
        Self {
            theorem,
            applicable: true,
            holds: counterexample.is_none(),
            dims: dims.iter().copied().collect(),
            counterexample,
            reason: None,
        }
    }

    /// Applicable and violated.
    pub fn violated(&self) -> bool {
        self.applicable && !self.holds
    }
}

fn d(s: &Gf2Subspace) -> i64 {
    s.dim() as i64
}

fn containment(
    id: TheoremId,
    lhs: &Gf2Subspace,
    rhs: &Gf2Subspace,
    dims: &[(&'static str, i64)],
) -> TheoremReport {
    let witness = lhs.witness_outside(rhs).expect("common universe");
    TheoremReport::new(id, dims, witness)
}

fn equality(
    id: TheoremId,
    lhs: &Gf2Subspace,
    rhs: &Gf2Subspace,
    dims: &[(&'static str, i64)],
) -> TheoremReport {
    let witness = lhs
        .witness_outside(rhs)
        .expect("common universe")
        .or_else(|| rhs.witness_outside(lhs).expect("common universe"));
    TheoremReport::new(id, dims, witness)
}

fn plural(n: usize, what: &str) -> String {
    if n == 1 {
        format!("1 {what}")
    } else {
        format!("{n} {what}s")
    }
}

fn absorption_from(b: &SpaceBundle) -> Vec<TheoremReport> {
    let cases = [
        (
            TheoremId::T1a,
            &b.v_bond,
            &b.f_bond,
            &b.z_bond,
            ["dim(V∩F)", "dim(Z)"],
        ),
        (
            TheoremId::T1b,
            &b.f_bond,
            &b.z_bond,
            &b.v_bond,
            ["dim(F∩Z)", "dim(V)"],
        ),
        (
            TheoremId::T1c,
            &b.z_bond,
            &b.v_bond,
            &b.f_bond,
            ["dim(Z∩V)", "dim(F)"],
        ),
    ];
    cases
        .into_iter()
        .map(|(id, x, y, target, [k1, k2])| {
            let meet = x.intersect(y).expect("common universe");
            containment(id, &meet, target, &[(k1, d(&meet)), (k2, d(target))])
        })
        .collect()
}

/// Absorption: each pairwise intersection of the three bond spaces lies in
/// the third. Always applicable.
pub fn check_absorption(map: &FlagMap) -> Result<Vec<TheoremReport>, SpaceError> {
    Ok(absorption_from(&space_bundle(map)?))
}

fn zigzag_reason(map: &FlagMap) -> Option<String> {
    let z = map.gon_count(GonKind::Z);
    (z != 1).then(|| plural(z, "zigzag"))
}

/// The operators `c_P` and `c_P~` of a single-zigzag map.
fn zigzag_operators(map: &FlagMap) -> Option<(LinearOp, LinearOp)> {
    let w = zigzag_word(map).ok()?;
    let c_p = w.c_operator();
    let c_ptilde = LinearOp::identity(map.m())
        .add(&c_p)
        .expect("same universe");
    Some((c_p, c_ptilde))
}

pub fn check_theorem2(map: &FlagMap) -> Result<Vec<TheoremReport>, SpaceError> {
    let ids = [
        TheoremId::T2a,
        TheoremId::T2b,
        TheoremId::T2c,
        TheoremId::T2d,
    ];
    let Some((c_p, c_ptilde)) = zigzag_operators(map) else {
        let reason = zigzag_reason(map).unwrap_or_default();
        return Ok(ids
            .map(|id| TheoremReport::not_applicable(id, reason.clone()))
            .to_vec());
    };
    let b = space_bundle(map)?;
    let (im_p, ker_p) = (c_p.image(), c_p.kernel());
    let (im_t, ker_t) = (c_ptilde.image(), c_ptilde.kernel());
    Ok(vec![
        equality(
            ids[0],
            &im_p,
            &b.v_cycle,
            &[("dim Im(c_P)", d(&im_p)), ("dim V⊥", d(&b.v_cycle))],
        ),
        equality(
            ids[1],
            &ker_p,
            &b.v_bond,
            &[("dim Ker(c_P)", d(&ker_p)), ("dim V", d(&b.v_bond))],
        ),
        equality(
            ids[2],
            &im_t,
            &b.f_cycle,
            &[("dim Im(c_P~)", d(&im_t)), ("dim F⊥", d(&b.f_cycle))],
        ),
        equality(
            ids[3],
            &ker_t,
            &b.f_bond,
            &[("dim Ker(c_P~)", d(&ker_t)), ("dim F", d(&b.f_bond))],
        ),
    ])
}

pub fn check_theorem3(map: &FlagMap) -> Result<Vec<TheoremReport>, SpaceError> {
    let ids = [TheoremId::T3a, TheoremId::T3b, TheoremId::T3c];
    let Some((c_p, c_ptilde)) = zigzag_operators(map) else {
        let reason = zigzag_reason(map).unwrap_or_default();
        return Ok(ids
            .map(|id| TheoremReport::not_applicable(id, reason.clone()))
            .to_vec());
    };
    let b = space_bundle(map)?;
    let comp = LinearOp::compose(&c_ptilde, &c_p).expect("same universe");
    let im = comp.image();
    let ker = comp.kernel();
    let (_, xi) = map.euler_connectivity();
    let meet = b.v_cycle.intersect(&b.f_cycle).expect("common universe");
    let sum = b.v_bond.sum(&b.f_bond).expect("common universe");

    // a dimension mismatch has no vector witness
    let dim_report = TheoremReport {
        holds: d(&im) == xi,
        ..TheoremReport::new(ids[0], &[("dim Im", d(&im)), ("xi", xi)], None)
    };
    Ok(vec![
        dim_report,
        equality(
            ids[1],
            &im,
            &meet,
            &[("dim Im", d(&im)), ("dim(V⊥∩F⊥)", d(&meet))],
        ),
        equality(
            ids[2],
            &ker,
            &sum,
            &[("dim Ker", d(&ker)), ("dim(V+F)", d(&sum))],
        ),
    ])
}

pub fn check_theorem4(map: &FlagMap) -> TheoremReport {
    let id = TheoremId::T4;
    let f = map.gon_count(GonKind::F);
    let z = map.gon_count(GonKind::Z);
    if f != 1 || z != 1 {
        let mut why = Vec::new();
        if f != 1 {
            why.push(plural(f, "face"));
        }
        if z != 1 {
            why.push(plural(z, "zigzag"));
        }
        return TheoremReport::not_applicable(id, why.join(", "));
    }
    let (_, c_ptilde) = zigzag_operators(map).expect("single zigzag");
    let c_d = face_word(map).expect("single face").c_operator();
    let comp = LinearOp::compose(&c_ptilde, &c_d).expect("same universe");
    let witness = (0..map.m())
        .find(|&x| *comp.column(x) != Gf2Vec::singleton(map.m(), x))
        .map(|x| Gf2Vec::singleton(map.m(), x));
    TheoremReport::new(
        id,
        &[("m", map.m() as i64), ("rank", comp.rank() as i64)],
        witness,
    )
}

/// Every statement, in order 1a..4.
pub fn verify_all(map: &FlagMap) -> Result<Vec<TheoremReport>, SpaceError> {
    let mut out = check_absorption(map)?;
    out.extend(check_theorem2(map)?);
    out.extend(check_theorem3(map)?);
    out.push(check_theorem4(map));
    Ok(out)
}

/// For a single-face, single-zigzag map: `|i_D(x) ∩ i_P~(x)| mod 2` for
/// every edge that is an unbalanced loop of the dual. `None` when the map
/// does not have one face and one zigzag.
pub fn unbalanced_interlacement_parities(map: &FlagMap) -> Option<Vec<(usize, bool)>> {
    let dw = face_word(map).ok()?;
    let pw = ptilde_word(map).ok()?;
    let dual = map.dual();
    let out = (0..map.m())
        .filter(|&x| dual.loop_balance(x) == Ok(LoopBalance::Unbalanced))
        .map(|x| {
            let a = dw.interlacement(x).expect("edge in range");
            let b = pw.interlacement(x).expect("edge in range");
            (x, a.bilinear_form(&b).expect("same universe"))
        })
        .collect();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{parse_word, zigzag_map_from_word};
    use crate::gem::samples::*;

    fn k33() -> FlagMap {
        zigzag_map_from_word(&parse_word("1 8 5 6 9 4 5 7 3 4 -8 2 3 -9 1 2 -7 6").unwrap())
    }

    #[test]
    fn absorption_holds_on_reference_maps() {
        for map in [sphere_loop(), projective_loop(), single_edge(), k33()] {
            let reports = check_absorption(&map).unwrap();
            assert_eq!(reports.len(), 3);
            assert!(reports.iter().all(|r| r.applicable && r.holds));
        }
        let r = &check_absorption(&k33()).unwrap()[0];
        assert_eq!(r.dims["dim(V∩F)"], 0);
    }

    #[test]
    fn theorem2_on_k33() {
        let r = check_theorem2(&k33()).unwrap();
        assert!(r.iter().all(|r| r.holds));
        assert_eq!(r[0].dims["dim Im(c_P)"], 4);
        assert_eq!(r[1].dims["dim Ker(c_P)"], 5);
        assert_eq!(r[2].dims["dim Im(c_P~)"], 6);
        assert_eq!(r[3].dims["dim Ker(c_P~)"], 3);
    }

    #[test]
    fn theorem2_on_loops() {
        assert!(check_theorem2(&sphere_loop())
            .unwrap()
            .iter()
            .all(|r| r.holds));
        let r = check_theorem2(&projective_loop()).unwrap();
        assert!(r.iter().all(|r| !r.applicable));
        assert_eq!(r[0].reason.as_deref(), Some("2 zigzags"));
    }

    #[test]
    fn theorem3_dimensions() {
        let r = check_theorem3(&k33()).unwrap();
        assert!(r.iter().all(|r| r.holds));
        assert_eq!(r[0].dims["dim Im"], 1);
        assert_eq!(r[0].dims["xi"], 1);
        let r = check_theorem3(&sphere_loop()).unwrap();
        assert!(r.iter().all(|r| r.holds));
        assert_eq!(r[0].dims["dim Im"], 0);
    }

    #[test]
    fn theorem4_applicability() {
        let r = check_theorem4(&sphere_loop());
        assert!(!r.applicable);
        assert_eq!(r.reason.as_deref(), Some("2 faces"));
        let r = check_theorem4(&single_edge());
        assert!(r.applicable && r.holds);
        assert_eq!(r.dims["m"], 1);
        assert!(!check_theorem4(&k33()).applicable);
    }

    #[test]
    fn report_json_shape() {
        let r = check_theorem4(&single_edge());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["theorem"], "4");
        assert_eq!(json["applicable"], true);
        assert!(json.get("counterexample").is_none());

        let mut broken = r.clone();
        broken.holds = false;
        broken.counterexample = Some(Gf2Vec::singleton(3, 1));
        let json = serde_json::to_value(&broken).unwrap();
        assert_eq!(json["counterexample"], serde_json::json!([2]));
    }

    #[test]
    fn counterexamples_are_recheckable() {
        // V ⊆ F fails on the single edge map; the witness must lie in V \ F
        let b = space_bundle(&single_edge()).unwrap();
        let r = containment(TheoremId::T1a, &b.v_bond, &b.f_bond, &[]);
        let w = r.counterexample.clone().unwrap();
        assert!(b.v_bond.contains(&w).unwrap());
        assert!(!b.f_bond.contains(&w).unwrap());
        assert!(r.violated());
    }

    #[test]
    fn verify_all_is_ordered() {
        let labels: Vec<&str> = verify_all(&k33())
            .unwrap()
            .iter()
            .map(|r| r.theorem.label())
            .collect();
        assert_eq!(
            labels,
            ["1a", "1b", "1c", "2a", "2b", "2c", "2d", "3a", "3b", "3c", "4"]
        );
    }
}
