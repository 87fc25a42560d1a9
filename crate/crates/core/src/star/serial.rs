//! JSON exchange format for phase-space functions.
//!
//! A function is a list of term records. Coefficients with several surd
//! components emit one record per radicand; records sharing a monomial are
//! summed on input.

use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Envelope, MonomialKey, PhaseSpaceFunction};
use crate::scalar::{rational_from_str, rational_to_string, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff_re: String,
    pub coeff_im: String,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub sqrt: u64,
    pub exps: [u16; 4],
    pub hbar: u16,
    pub envelope: EnvelopeTag,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub pi: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnvelopeTag {
    None,
    Vacuum,
}

fn one() -> u64 {
    1
}
fn is_one(x: &u64) -> bool {
    *x == 1
}
fn is_zero(x: &i32) -> bool {
    *x == 0
}

impl From<Envelope> for EnvelopeTag {
    fn from(e: Envelope) -> Self {
        match e {
            Envelope::None => EnvelopeTag::None,
            Envelope::Vacuum => EnvelopeTag::Vacuum,
        }
    }
}

impl From<EnvelopeTag> for Envelope {
    fn from(e: EnvelopeTag) -> Self {
        match e {
            EnvelopeTag::None => Envelope::None,
            EnvelopeTag::Vacuum => Envelope::Vacuum,
        }
    }
}

impl PhaseSpaceFunction {
    pub fn to_records(&self) -> Vec<TermRecord> {
        let mut out = Vec::new();
        for (k, c) in self.terms() {
            for (s, z) in c.terms() {
                out.push(TermRecord {
                    coeff_re: rational_to_string(&z.re),
                    coeff_im: rational_to_string(&z.im),
                    sqrt: s,
                    exps: k.exps,
                    hbar: k.hbar,
                    envelope: self.envelope().into(),
                    pi: self.pi_power(),
                });
            }
        }
        out
    }

    pub fn from_records(records: &[TermRecord]) -> Result<Self, String> {
        let mut out = PhaseSpaceFunction::zero();
        let mut class: Option<(EnvelopeTag, i32)> = None;
        for r in records {
            match class {
                None => class = Some((r.envelope, r.pi)),
                Some(c) if c != (r.envelope, r.pi) => {
                    return Err("records disagree on envelope or pi power".into())
                }
                _ => {}
            }
            let re = rational_from_str(&r.coeff_re).ok_or_else(|| format!("bad rational '{}'", r.coeff_re))?;
            let im = rational_from_str(&r.coeff_im).ok_or_else(|| format!("bad rational '{}'", r.coeff_im))?;
            if r.sqrt == 0 {
                return Err("sqrt radicand must be positive".into());
            }
            let c = Scalar::from_terms([(r.sqrt, Complex::new(re, im))]);
            out.add_term(MonomialKey { exps: r.exps, hbar: r.hbar }, c);
        }
        if let Some((env, pi)) = class {
            out.envelope = env.into();
            out.pi_power = pi;
        }
        Ok(out.normalized())
    }
}

impl Serialize for PhaseSpaceFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_records().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PhaseSpaceFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(d)?;
        PhaseSpaceFunction::from_records(&records).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::star::Var;

    #[test]
    fn record_layout() {
        let f = PhaseSpaceFunction::var(Var::P1).scale(&Scalar::from_ratio(1, 2))
            + PhaseSpaceFunction::hbar().scale(&Scalar::i());
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"[{"coeff_re":"0","coeff_im":"1","exps":[0,0,0,0],"hbar":1,"envelope":"none"},{"coeff_re":"1/2","coeff_im":"0","exps":[0,0,1,0],"hbar":0,"envelope":"none"}]"#
        );
        let back: PhaseSpaceFunction = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn surds_and_envelopes_survive() {
        let f = PhaseSpaceFunction::q1()
            .scale(&(Scalar::sqrt(2) + Scalar::from_ratio(1, 3)))
            .with_envelope(Envelope::Vacuum)
            .times_pi_power(-2);
        let json = serde_json::to_string(&f).unwrap();
        let back: PhaseSpaceFunction = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn mixed_envelopes_are_rejected() {
        let json = r#"[{"coeff_re":"1","coeff_im":"0","exps":[0,0,0,0],"hbar":0,"envelope":"none"},
                      {"coeff_re":"1","coeff_im":"0","exps":[1,0,0,0],"hbar":0,"envelope":"vacuum"}]"#;
        assert!(serde_json::from_str::<PhaseSpaceFunction>(json).is_err());
    }
}
