//! JSON model files.
//!
//! A model file lists the structure equations term by term, the character
//! potential, sectors, the diagonal metric, and any named group actions.
//! Files load only if the resulting model validates; save∘load is the
//! identity on canonical models.

use crate::calculus::Model;
use crate::catalog::GroupAction;
use crate::exterior::{Form, GaussInt, Monomial, Sector};
use crate::scalar::Scalar;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error)]
pub enum ModelFileError {
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad scalar '{text}': {msg}")]
    BadScalar { text: String, msg: String },
    #[error("generator index {0} out of range for dim {1}")]
    BadIndex(u8, u8),
    #[error("model fails validation: {0}")]
    Invalid(String),
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TermObject {
    pub coeff: String,
    pub holo: Vec<u8>,
    pub anti: Vec<u8>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ActionObject {
    pub order: u32,
    pub eigenvalues: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ModelFile {
    pub name: String,
    pub dim: u8,
    pub d_eta: Vec<Vec<TermObject>>,
    pub mu: Vec<TermObject>,
    pub sectors: Vec<[i64; 4]>,
    pub metric: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, ActionObject>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
}

fn parse_scalar(text: &str) -> Result<Scalar, ModelFileError> {
    text.parse().map_err(|e: crate::scalar::ScalarParseError| {
        ModelFileError::BadScalar { text: text.to_string(), msg: e.msg }
    })
}

fn parse_rational(text: &str) -> Result<BigRational, ModelFileError> {
    let s = parse_scalar(text)?;
    if !s.is_real() {
        return Err(ModelFileError::BadScalar {
            text: text.to_string(),
            msg: "expected a real rational".to_string(),
        });
    }
    Ok(s.re)
}

fn terms_to_form(terms: &[TermObject], dim: u8) -> Result<Form, ModelFileError> {
    let mut f = Form::zero();
    for t in terms {
        let mut holo = 0u16;
        for &i in &t.holo {
            if i == 0 || i > dim {
                return Err(ModelFileError::BadIndex(i, dim));
            }
            holo |= 1 << (i - 1);
        }
        let mut anti = 0u16;
        for &i in &t.anti {
            if i == 0 || i > dim {
                return Err(ModelFileError::BadIndex(i, dim));
            }
            anti |= 1 << (i - 1);
        }
        f.add_term(Monomial::new(Sector::TRIVIAL, holo, anti), parse_scalar(&t.coeff)?);
    }
    Ok(f)
}

fn form_to_terms(f: &Form) -> Vec<TermObject> {
    f.terms()
        .map(|(m, c)| {
            let holo = (0..16).filter(|i| m.holo >> i & 1 == 1).map(|i| i + 1).collect();
            let anti = (0..16).filter(|i| m.anti >> i & 1 == 1).map(|i| i + 1).collect();
            TermObject { coeff: c.to_string(), holo, anti }
        })
        .collect()
}

impl ModelFile {
    pub fn from_model(model: &Model) -> ModelFile {
        ModelFile {
            name: model.name.clone(),
            dim: model.rank,
            d_eta: model.d_eta.iter().map(form_to_terms).collect(),
            mu: form_to_terms(&model.mu),
            sectors: model
                .sectors
                .iter()
                .map(|s| [s.a.re, s.a.im, s.b.re, s.b.im])
                .collect(),
            metric: model
                .metric
                .iter()
                .map(|c| Scalar::from_rational(c.clone()).to_string())
                .collect(),
            actions: model
                .actions
                .iter()
                .map(|(name, a)| {
                    (
                        name.clone(),
                        ActionObject {
                            order: a.order,
                            eigenvalues: a.eigenvalues.iter().map(Scalar::to_string).collect(),
                        },
                    )
                })
                .collect(),
            params: BTreeMap::new(),
        }
    }

    pub fn into_model(&self) -> Result<Model, ModelFileError> {
        let mut d_eta = Vec::with_capacity(self.d_eta.len());
        for terms in &self.d_eta {
            d_eta.push(terms_to_form(terms, self.dim)?);
        }
        let mu = terms_to_form(&self.mu, self.dim)?;
        let sectors = self
            .sectors
            .iter()
            .map(|&[a_re, a_im, b_re, b_im]| {
                Sector::new(GaussInt::new(a_re, a_im), GaussInt::new(b_re, b_im))
            })
            .collect();
        let mut metric = Vec::with_capacity(self.metric.len());
        for c in &self.metric {
            metric.push(parse_rational(c)?);
        }
        let mut model = Model::new(&self.name, self.dim, d_eta, mu, sectors).with_metric(metric);
        for (name, a) in &self.actions {
            let mut eigenvalues = Vec::with_capacity(a.eigenvalues.len());
            for e in &a.eigenvalues {
                eigenvalues.push(parse_scalar(e)?);
            }
            model = model.with_action(GroupAction::new(name, a.order, eigenvalues));
        }
        let report = model.validate();
        if !report.is_ok() {
            return Err(ModelFileError::Invalid(report.failures.join("; ")));
        }
        Ok(model)
    }
}

pub fn save_model(model: &Model, path: &std::path::Path) -> Result<(), ModelFileError> {
    let file = ModelFile::from_model(model);
    std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

pub fn load_model(path: &std::path::Path) -> Result<Model, ModelFileError> {
    let text = std::fs::read_to_string(path)?;
    let file: ModelFile = serde_json::from_str(&text)?;
    file.into_model()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn save_load_round_trip() {
        for model in [
            catalog::iwasawa(),
            catalog::nakamura_hp(),
            catalog::nakamura_family(&Scalar::from_ratio(1, 2)).unwrap(),
        ] {
            let file = ModelFile::from_model(&model);
            let text = serde_json::to_string(&file).unwrap();
            let parsed: ModelFile = serde_json::from_str(&text).unwrap();
            let back = parsed.into_model().unwrap();
            assert_eq!(back.d_eta, model.d_eta);
            assert_eq!(back.mu, model.mu);
            assert_eq!(back.sectors, model.sectors);
            assert_eq!(back.metric, model.metric);
            assert_eq!(back.actions, model.actions);
        }
    }

    #[test]
    fn invalid_model_is_rejected_on_load() {
        let mut file = ModelFile::from_model(&catalog::iwasawa());
        // inject an integrability violation: dη³ gets a (0,2) term
        file.d_eta[2].push(TermObject {
            coeff: "1".to_string(),
            holo: vec![],
            anti: vec![1, 2],
        });
        assert!(matches!(
            file.into_model(),
            Err(ModelFileError::Invalid(_))
        ));
    }

    #[test]
    fn bad_index_is_rejected() {
        let mut file = ModelFile::from_model(&catalog::iwasawa());
        file.d_eta[0].push(TermObject {
            coeff: "1".to_string(),
            holo: vec![7],
            anti: vec![],
        });
        assert!(matches!(file.into_model(), Err(ModelFileError::BadIndex(7, 3))));
    }
}
