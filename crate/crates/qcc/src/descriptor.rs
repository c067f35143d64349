//! The `qcc/1` code-descriptor file format: a line-oriented key:value
//! text file that pins down a cyclic stabiliser code and survives
//! byte-identical write → read → write round trips.
//!
//! Field order is fixed; optional fields appear only when set. The
//! polynomial encoding is the `f2:`-prefixed hex of the little-endian
//! coefficient bits. Loading re-validates the generating triple and every
//! optional field that can be recomputed cheaply (the CRT element, the
//! BCH witness, k); a stored exact distance is re-verified by the
//! `distance` command when it reruns the enumeration.

use std::path::Path;

use thiserror::Error;

use crate::cyclic_code::{CyclicStabiliserCode, GeneratingTriple};
use crate::cyclotomic::BchBound;
use crate::fourm::{code_length, construct, FourMCode};
use crate::poly::BinaryPoly;

pub const FORMAT_HEADER: &str = "qcc/1";

#[derive(Debug, Error)]
pub enum DescriptorError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed descriptor: {0}")]
    Parse(String),
    #[error("descriptor violates invariant: {0}")]
    Validation(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeDescriptor {
    pub p: u8,
    pub n: usize,
    pub m: Option<u32>,
    pub k: usize,
    pub g: BinaryPoly,
    pub f: BinaryPoly,
    pub h: BinaryPoly,
    /// CRT isotropy element of 4ᵐ+1 codes.
    pub a: Option<BinaryPoly>,
    pub bch: Option<BchBound>,
    /// Exact distance, when it has been computed.
    pub d: Option<usize>,
}

impl CodeDescriptor {
    pub fn from_fourm(code: &FourMCode) -> Self {
        let triple = code.triple();
        Self {
            p: 2,
            n: code.n,
            m: Some(code.m),
            k: code.k,
            g: triple.g,
            f: triple.f,
            h: triple.h,
            a: Some(code.a.clone()),
            bch: Some(code.bch),
            d: None,
        }
    }

    pub fn from_triple(triple: &GeneratingTriple, k: usize) -> Self {
        Self {
            p: 2,
            n: triple.n,
            m: None,
            k,
            g: triple.g.clone(),
            f: triple.f.clone(),
            h: triple.h.clone(),
            a: None,
            bch: None,
            d: None,
        }
    }

    pub fn triple(&self) -> GeneratingTriple {
        GeneratingTriple::new(self.n, self.g.clone(), self.f.clone(), self.h.clone())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(FORMAT_HEADER);
        out.push('\n');
        out.push_str(&format!("p:{}\n", self.p));
        out.push_str(&format!("n:{}\n", self.n));
        if let Some(m) = self.m {
            out.push_str(&format!("m:{m}\n"));
        }
        out.push_str(&format!("k:{}\n", self.k));
        out.push_str(&format!("g:f2:{}\n", self.g.to_hex()));
        out.push_str(&format!("f:f2:{}\n", self.f.to_hex()));
        out.push_str(&format!("h:f2:{}\n", self.h.to_hex()));
        if let Some(a) = &self.a {
            out.push_str(&format!("a:f2:{}\n", a.to_hex()));
        }
        if let Some(b) = self.bch {
            out.push_str(&format!("bch:{},{},{}\n", b.d, b.multiplier, b.offset));
        }
        if let Some(d) = self.d {
            out.push_str(&format!("d:{d}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, DescriptorError> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| DescriptorError::Parse("empty file".into()))?;
        if header != FORMAT_HEADER {
            return Err(DescriptorError::Parse(format!(
                "expected header {FORMAT_HEADER:?}, found {header:?}"
            )));
        }
        let mut p = None;
        let mut n = None;
        let mut m = None;
        let mut k = None;
        let mut g = None;
        let mut f = None;
        let mut h = None;
        let mut a = None;
        let mut bch = None;
        let mut d = None;
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| DescriptorError::Parse(format!("bad line {line:?}")))?;
            match key {
                "p" => p = Some(parse_num::<u8>(value)?),
                "n" => n = Some(parse_num::<usize>(value)?),
                "m" => m = Some(parse_num::<u32>(value)?),
                "k" => k = Some(parse_num::<usize>(value)?),
                "g" => g = Some(parse_poly(value)?),
                "f" => f = Some(parse_poly(value)?),
                "h" => h = Some(parse_poly(value)?),
                "a" => a = Some(parse_poly(value)?),
                "bch" => {
                    let parts: Vec<&str> = value.split(',').collect();
                    if parts.len() != 3 {
                        return Err(DescriptorError::Parse(format!(
                            "bch needs d,c,l; found {value:?}"
                        )));
                    }
                    bch = Some(BchBound {
                        d: parse_num(parts[0])?,
                        multiplier: parse_num(parts[1])?,
                        offset: parse_num(parts[2])?,
                    });
                }
                "d" => d = Some(parse_num::<usize>(value)?),
                other => {
                    return Err(DescriptorError::Parse(format!("unknown key {other:?}")));
                }
            }
        }
        let missing = |name: &str| DescriptorError::Parse(format!("missing field {name}"));
        Ok(Self {
            p: p.ok_or_else(|| missing("p"))?,
            n: n.ok_or_else(|| missing("n"))?,
            m,
            k: k.ok_or_else(|| missing("k"))?,
            g: g.ok_or_else(|| missing("g"))?,
            f: f.ok_or_else(|| missing("f"))?,
            h: h.ok_or_else(|| missing("h"))?,
            a,
            bch,
            d,
        })
    }

    /// Re-verify everything recomputable: the triple conditions, k
    /// against the span, and (when present) m, the CRT element and the
    /// BCH witness against a fresh construction.
    pub fn validate(&self) -> Result<(), DescriptorError> {
        if self.p != 2 {
            return Err(DescriptorError::Validation(format!(
                "only p = 2 descriptors are supported, found p = {}",
                self.p
            )));
        }
        let triple = self.triple();
        triple
            .validate()
            .map_err(|e| DescriptorError::Validation(e.to_string()))?;
        let span = triple.span().expect("just validated");
        if self.n - span.dim() != self.k {
            return Err(DescriptorError::Validation(format!(
                "stored k = {} but the span gives k = {}",
                self.k,
                self.n - span.dim()
            )));
        }
        if let Some(m) = self.m {
            if code_length(m) != self.n {
                return Err(DescriptorError::Validation(format!(
                    "m = {m} implies n = {}, found n = {}",
                    code_length(m),
                    self.n
                )));
            }
        }
        if self.a.is_some() || self.bch.is_some() {
            let rebuilt = self.rebuild_fourm()?;
            if let Some(a) = &self.a {
                if *a != rebuilt.a {
                    return Err(DescriptorError::Validation(
                        "stored CRT element disagrees with reconstruction".into(),
                    ));
                }
            }
            if let Some(b) = self.bch {
                if b != rebuilt.bch {
                    return Err(DescriptorError::Validation(format!(
                        "stored BCH witness {:?} disagrees with recomputed {:?}",
                        b, rebuilt.bch
                    )));
                }
            }
        }
        Ok(())
    }

    /// Reconstruct the 4ᵐ+1 code. Requires m and a; the transversal is
    /// recovered from the residues of a.
    pub fn rebuild_fourm(&self) -> Result<FourMCode, DescriptorError> {
        let m = self.m.ok_or_else(|| {
            DescriptorError::Validation("descriptor lacks m; not a 4^m+1 code".into())
        })?;
        let a = self.a.as_ref().ok_or_else(|| {
            DescriptorError::Validation("descriptor lacks the CRT element a".into())
        })?;
        let leaders = transversal_from_a(self.n, &self.g, a)
            .map_err(DescriptorError::Validation)?;
        construct(m, &self.g, &leaders)
            .map_err(|e| DescriptorError::Validation(e.to_string()))
    }

    pub fn to_cyclic_code(&self) -> Result<CyclicStabiliserCode, DescriptorError> {
        let mut code = CyclicStabiliserCode::from_triple(self.triple())
            .map_err(|e| DescriptorError::Validation(e.to_string()))?;
        code.distance = self.d;
        Ok(code)
    }

    pub fn save(&self, path: &Path) -> Result<(), DescriptorError> {
        std::fs::write(path, self.render())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, DescriptorError> {
        let text = std::fs::read_to_string(path)?;
        let descriptor = Self::parse(&text)?;
        descriptor.validate()?;
        Ok(descriptor)
    }
}

/// Which transversal produced a given CRT element: the factors where
/// a ≡ η' are the chosen ones.
fn transversal_from_a(
    n: usize,
    g: &BinaryPoly,
    a: &BinaryPoly,
) -> Result<Vec<usize>, String> {
    use crate::field::F4;
    use crate::poly::QuartPoly;
    let f4s = crate::cyclotomic::factor_f4(n).map_err(|e| e.to_string())?;
    let g_q = QuartPoly::from_f2(g.clone());
    let a_q = QuartPoly::from_f2(a.clone());
    let mut eta_prime = QuartPoly::zero();
    eta_prime.set_coeff(0, F4::ETA_PRIME);
    let mut leaders = Vec::new();
    for (idx, factor) in f4s.factors.iter().enumerate() {
        if factor.poly.divides(&g_q) {
            continue;
        }
        let residue = a_q.rem(&factor.poly).map_err(|e| e.to_string())?;
        if residue == eta_prime.rem(&factor.poly).map_err(|e| e.to_string())? {
            leaders.push(f4s.leader_of(idx));
        }
    }
    Ok(leaders)
}

fn parse_num<T: std::str::FromStr>(s: &str) -> Result<T, DescriptorError> {
    s.trim()
        .parse::<T>()
        .map_err(|_| DescriptorError::Parse(format!("bad number {s:?}")))
}

fn parse_poly(s: &str) -> Result<BinaryPoly, DescriptorError> {
    let hex = s
        .strip_prefix("f2:")
        .ok_or_else(|| DescriptorError::Parse(format!("polynomial must be f2:<hex>, found {s:?}")))?;
    BinaryPoly::from_hex(hex).map_err(|e| DescriptorError::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laflamme_descriptor() -> CodeDescriptor {
        let code = construct(1, &BinaryPoly::x_plus_one(), &[2]).unwrap();
        CodeDescriptor::from_fourm(&code)
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let d = laflamme_descriptor();
        let text = d.render();
        let reparsed = CodeDescriptor::parse(&text).unwrap();
        assert_eq!(reparsed, d);
        assert_eq!(reparsed.render(), text);
    }

    #[test]
    fn validation_passes_for_construction_output() {
        laflamme_descriptor().validate().unwrap();
    }

    #[test]
    fn rebuild_recovers_the_code() {
        let d = laflamme_descriptor();
        let code = d.rebuild_fourm().unwrap();
        assert_eq!(code.k, 1);
        assert_eq!(code.bch.d, 3);
        assert_eq!(code.h_leaders, vec![2]);
    }

    #[test]
    fn corrupt_triple_is_rejected() {
        let mut d = laflamme_descriptor();
        d.h = BinaryPoly::x_plus_one(); // cross-annihilation now fails
        let err = d.validate().unwrap_err();
        assert!(matches!(err, DescriptorError::Validation(_)));
        assert!(err.to_string().contains("X^n-1"));
    }

    #[test]
    fn corrupt_a_is_rejected() {
        let mut d = laflamme_descriptor();
        let mut a = d.a.clone().unwrap();
        a.set_coeff(0, !a.coeff(0));
        d.a = Some(a);
        assert!(d.validate().is_err());
    }

    #[test]
    fn bad_header_is_rejected() {
        assert!(CodeDescriptor::parse("qcc/2\np:2\n").is_err());
    }
}
