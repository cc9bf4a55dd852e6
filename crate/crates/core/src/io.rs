//! File formats shared by the command-line tool and tests.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::distance::DistanceReport;
use crate::error::{Error, Result};
use crate::john::{check_john_certificate, CertificateCheck, GlmpReport, JohnCertificate};
use crate::polygon::{apply_affine, scale_negate, AffineMap, ConvexPolygon, Point};
use crate::scenario::ScenarioReport;
use crate::svg::{self, Layer};

/// Accepts `{"vertices": [[x, y], ...]}` or a bare `[[x, y], ...]` list.
#[derive(Deserialize)]
#[serde(untagged)]
enum PolygonFile {
    Object(ConvexPolygon),
    Bare(Vec<Point>),
}

pub fn parse_polygon(text: &str) -> Result<ConvexPolygon> {
    match serde_json::from_str::<PolygonFile>(text)? {
        PolygonFile::Object(p) => Ok(p),
        PolygonFile::Bare(v) => ConvexPolygon::new(&v),
    }
}

pub fn read_polygon(path: &Path) -> Result<ConvexPolygon> {
    parse_polygon(&read_text(path)?)
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&read_text(path)?)?)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// A distance report together with the two bodies it refers to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceRecord {
    pub k: ConvexPolygon,
    pub l: ConvexPolygon,
    pub report: DistanceReport,
}

impl DistanceRecord {
    /// Re-verifies the stored witness against the stored bodies.
    pub fn recheck(&self) -> bool {
        self.report.recheck(&self.k, &self.l)
    }
}

impl DistanceRecord {
    /// `K + u` and `sign·r(K + u)` dotted, `T(L + v)` solid.
    pub fn svg(&self) -> Result<String> {
        let rep = &self.report;
        let inner = self.k.translate(rep.shift_inner);
        let mapped = apply_affine(&rep.map, &self.l.translate(rep.shift_outer))?;
        let outer = if rep.sign == 1 {
            inner.scale(rep.r)
        } else {
            scale_negate(&inner, rep.r, Point::ORIGIN)?
        };
        Ok(svg::render(
            &[
                Layer::dotted("K + u", &inner),
                Layer::solid("T(L + v)", &mapped),
                Layer::dotted("r(K + u)", &outer),
            ],
            &[],
        ))
    }
}

/// Output of the John-position pipeline: `map` places `K` inside `L`, and
/// the certificate is stated for `map(K) − z ⊂ L − z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JohnRecord {
    pub k: ConvexPolygon,
    pub l: ConvexPolygon,
    pub map: AffineMap,
    pub certificate: JohnCertificate,
    pub check: CertificateCheck,
    pub glmp: GlmpReport,
}

impl JohnRecord {
    /// Bodies in the certificate frame: `(K', L')`.
    pub fn frame(&self) -> Result<(ConvexPolygon, ConvexPolygon)> {
        let z = self.certificate.recenter * -1.0;
        Ok((
            apply_affine(&self.map, &self.k)?.translate(z),
            self.l.translate(z),
        ))
    }

    pub fn recheck(&self) -> bool {
        check_john_certificate(&self.certificate).pass
    }

    pub fn svg(&self) -> Result<String> {
        let (k, l) = self.frame()?;
        let neg = scale_negate(&k, 2.0, Point::ORIGIN)?;
        let points: Vec<(String, Point)> = self
            .certificate
            .pairs
            .iter()
            .enumerate()
            .map(|(i, p)| (format!("u{}", i + 1), p.u))
            .collect();
        Ok(svg::render(
            &[
                Layer::solid("L", &l),
                Layer::dotted("K", &k),
                Layer::dotted("−2K", &neg),
            ],
            &points,
        ))
    }
}

/// Any report the renderer understands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnyReport {
    Distance(DistanceRecord),
    John(JohnRecord),
    Scenario(ScenarioReport),
}

impl AnyReport {
    pub fn svg(&self) -> Result<String> {
        match self {
            AnyReport::Distance(d) => d.svg(),
            AnyReport::John(j) => j.svg(),
            AnyReport::Scenario(s) => Ok(s.svg()),
        }
    }
}
