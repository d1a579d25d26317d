//! JSON input format for representations: the braned space's block
//! dimensions, and one sparse tensor per generator, with exact rational
//! entries as strings.

use crate::brane::{build_braned_space, BranedSpace};
use crate::tensor::{Representation, Tensor};
use crate::{ReprError, Result};
use graphcore::OrientWord;
use linalg::Q;
use propcalc::family::{Corolla, Family};
use serde::Deserialize;
use std::collections::BTreeMap;

#[derive(Deserialize)]
struct SpaceJson {
    k: u8,
    blocks: BTreeMap<String, usize>,
    #[serde(default)]
    lagrangian: bool,
}

#[derive(Deserialize)]
struct GeneratorJson {
    family: String,
    #[serde(default)]
    c: i64,
    #[serde(default)]
    d: i64,
    k: u8,
    out: Vec<String>,
    #[serde(rename = "in")]
    inputs: Vec<String>,
}

#[derive(Deserialize)]
struct TensorJson {
    generator: GeneratorJson,
    entries: Vec<(Vec<u16>, String)>,
}

#[derive(Deserialize)]
struct RepresentationJson {
    space: SpaceJson,
    #[serde(default)]
    reduced: bool,
    tensors: Vec<TensorJson>,
}

fn parse_pattern(s: &str) -> Result<u32> {
    let mut bits = 0u32;
    for (i, ch) in s.chars().enumerate() {
        match ch {
            '+' => {}
            '-' => bits |= 1 << i,
            _ => return Err(ReprError::Parse(format!("bad block pattern {s:?}"))),
        }
    }
    Ok(bits)
}

fn parse_family(g: &GeneratorJson) -> Result<Family> {
    match g.family.as_str() {
        "AssInf" => Ok(Family::AssInf { k: g.k }),
        "LieInf" => Ok(Family::LieInf { k: g.k }),
        "HoLB" => Ok(Family::HoLB { c: g.c, d: g.d, k: g.k }),
        "Ass" => Ok(Family::Ass { k: g.k }),
        "Lie" => Ok(Family::Lie { k: g.k }),
        "IB" => Ok(Family::IB),
        "LieBDiop" => Ok(Family::LieBDiop),
        other => Err(ReprError::Parse(format!("unknown family {other:?}"))),
    }
}

fn parse_space(s: &SpaceJson) -> Result<BranedSpace> {
    let mut dims = BTreeMap::new();
    for (pat, dim) in &s.blocks {
        if pat.len() != s.k as usize {
            return Err(ReprError::Parse(format!(
                "pattern {pat:?} has length {} for k = {}",
                pat.len(),
                s.k
            )));
        }
        dims.insert(parse_pattern(pat)?, *dim);
    }
    build_braned_space(s.k, dims, s.lagrangian)
}

pub fn representation_from_json(text: &str) -> Result<Representation> {
    let j: RepresentationJson =
        serde_json::from_str(text).map_err(|e| ReprError::Parse(format!("json: {e}")))?;
    let space = parse_space(&j.space)?;
    let mut rep = Representation::new(space, j.reduced);
    for t in &j.tensors {
        let family = parse_family(&t.generator)?;
        let parse_words = |ws: &[String]| -> Result<Vec<OrientWord>> {
            ws.iter()
                .map(|w| OrientWord::parse_pm(w).map_err(ReprError::Graph))
                .collect()
        };
        let corolla = Corolla::new(
            family,
            parse_words(&t.generator.out)?,
            parse_words(&t.generator.inputs)?,
        );
        if !corolla.is_valid() {
            return Err(ReprError::Parse(format!("invalid generator {corolla:?}")));
        }
        let mut dims = Vec::new();
        for pos in 0..corolla.m() {
            dims.push(rep.leg_dim(
                &corolla,
                propcalc::dec::Slot {
                    side: propcalc::dec::Side::Out,
                    pos: pos as u8,
                },
            ));
        }
        for pos in 0..corolla.n() {
            dims.push(rep.leg_dim(
                &corolla,
                propcalc::dec::Slot {
                    side: propcalc::dec::Side::In,
                    pos: pos as u8,
                },
            ));
        }
        let mut tensor = Tensor::zero(dims);
        for (idx, val) in &t.entries {
            let q: Q = val
                .parse()
                .map_err(|_| ReprError::Parse(format!("bad rational {val:?}")))?;
            tensor.set(idx.clone(), q);
        }
        rep.assign(&corolla, tensor)?;
    }
    Ok(rep)
}
