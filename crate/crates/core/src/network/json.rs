//! JSON exchange format:
//! `{"species": [...], "steps": [{"reactant": {"X": "1"}, "product": {...}, "rate": "a"}]}`
//! with coefficients and numeric rates written as exact `p/q` strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Complex, NetworkError, Rate, ReactionNetwork, ReactionStep};
use crate::rational::{format_rational, parse_rational};

#[derive(Serialize, Deserialize)]
struct NetworkJson {
    species: Vec<String>,
    steps: Vec<StepJson>,
}

#[derive(Serialize, Deserialize)]
struct StepJson {
    reactant: BTreeMap<String, String>,
    product: BTreeMap<String, String>,
    rate: String,
}

fn complex_json(c: &Complex, species: &[String]) -> BTreeMap<String, String> {
    c.iter().map(|(s, v)| (species[s].clone(), format_rational(v))).collect()
}

pub(super) fn to_json(net: &ReactionNetwork) -> serde_json::Value {
    let raw = NetworkJson {
        species: net.species.clone(),
        steps: net
            .steps
            .iter()
            .map(|st| StepJson {
                reactant: complex_json(&st.reactant, &net.species),
                product: complex_json(&st.product, &net.species),
                rate: st.rate.to_string(),
            })
            .collect(),
    };
    serde_json::to_value(raw).expect("network serializes")
}

pub(super) fn from_json(text: &str) -> Result<ReactionNetwork, NetworkError> {
    let raw: NetworkJson = serde_json::from_str(text).map_err(|e| NetworkError::Json(e.to_string()))?;
    let complex = |m: &BTreeMap<String, String>| -> Result<Complex, NetworkError> {
        let mut pairs = Vec::new();
        for (name, v) in m {
            let idx = raw
                .species
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| NetworkError::Json(format!("unknown species `{name}`")))?;
            let value = parse_rational(v).map_err(|e| NetworkError::Json(e.to_string()))?;
            if value < num::Zero::zero() {
                return Err(NetworkError::Json(format!("negative coefficient for `{name}`")));
            }
            pairs.push((idx, value));
        }
        Ok(Complex::from_pairs(pairs))
    };
    let steps = raw
        .steps
        .iter()
        .map(|s| {
            Ok(ReactionStep {
                reactant: complex(&s.reactant)?,
                product: complex(&s.product)?,
                rate: Rate::parse(&s.rate).map_err(NetworkError::Json)?,
            })
        })
        .collect::<Result<Vec<_>, NetworkError>>()?;
    let net = ReactionNetwork::new(raw.species.clone(), steps)?;
    net.validate()?;
    Ok(net)
}
