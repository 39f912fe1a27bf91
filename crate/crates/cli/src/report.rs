//! Deterministic JSON and CSV emission.
//!
//! Floats are written with 17 significant digits in scientific notation so
//! that every run of the same configuration produces identical bytes.
//! Non-finite values become `null` in JSON and empty fields in CSV.

use std::io::{self, Write};

use parabound::{BoundKind, BoundReport};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

/// `{:.16e}`: one leading digit and sixteen after the point.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        String::new()
    }
}

/// Pretty layout from serde_json, fixed-precision floats.
struct FixedFormatter<'a> {
    inner: PrettyFormatter<'a>,
}

impl Formatter for FixedFormatter<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = Vec::new();
    let fmt = FixedFormatter { inner: PrettyFormatter::with_indent(b"  ") };
    let mut ser = serde_json::Serializer::with_formatter(&mut out, fmt);
    value.serialize(&mut ser).expect("serializing into memory cannot fail");
    out.push(b'\n');
    out
}

/// One CSV table; every row has as many fields as the header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }
}

pub fn opt_f64(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

/// Bound report as serialized by every command.
#[derive(Debug, Clone, Serialize)]
pub struct BoundJson {
    pub kind: &'static str,
    pub epsilon: Option<f64>,
    pub integral: Option<f64>,
    pub beta_sq_bound: Option<f64>,
    pub alpha_sq_bound: Option<f64>,
    pub transmission_lower: Option<f64>,
    pub reflection_upper: Option<f64>,
    pub lower_beta_sq: Option<f64>,
    pub applicable: bool,
    pub quad_error: Option<f64>,
    /// Why the bound was not evaluated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

impl BoundJson {
    pub const HEADER: [&'static str; 11] = [
        "kind",
        "epsilon",
        "integral",
        "beta_sq_bound",
        "alpha_sq_bound",
        "transmission_lower",
        "reflection_upper",
        "lower_beta_sq",
        "applicable",
        "quad_error",
        "note",
    ];

    pub fn from_report(r: &BoundReport) -> Self {
        Self {
            kind: r.kind.name(),
            epsilon: r.kind.epsilon(),
            integral: r.integral,
            beta_sq_bound: finite(r.beta_sq_bound),
            alpha_sq_bound: finite(r.alpha_sq_bound),
            transmission_lower: finite(r.transmission_lower),
            reflection_upper: finite(r.reflection_upper),
            lower_beta_sq: r.lower_beta_sq,
            applicable: r.applicable,
            quad_error: Some(r.quad_error),
            note: None,
        }
    }

    /// A requested bound that does not apply to this profile.
    pub fn not_applicable(kind: BoundKind, note: String) -> Self {
        Self {
            kind: kind.name(),
            epsilon: kind.epsilon(),
            integral: None,
            beta_sq_bound: None,
            alpha_sq_bound: None,
            transmission_lower: None,
            reflection_upper: None,
            lower_beta_sq: None,
            applicable: false,
            quad_error: None,
            note: Some(note),
        }
    }

    /// The headline number: the upper bound on |β|², or the lower bound.
    pub fn value(&self) -> Option<f64> {
        if self.kind == "lower" {
            self.lower_beta_sq.filter(|_| self.applicable)
        } else {
            self.beta_sq_bound
        }
    }

    pub fn row(&self) -> Vec<String> {
        vec![
            self.kind.to_string(),
            opt_f64(self.epsilon),
            opt_f64(self.integral),
            opt_f64(self.beta_sq_bound),
            opt_f64(self.alpha_sq_bound),
            opt_f64(self.transmission_lower),
            opt_f64(self.reflection_upper),
            opt_f64(self.lower_beta_sq),
            self.applicable.to_string(),
            opt_f64(self.quad_error),
            self.note.clone().unwrap_or_default(),
        ]
    }
}

/// Key/value pairs serialized as a JSON object in the given order.
#[derive(Debug, Clone, Default)]
pub struct Ordered(pub Vec<(String, Option<f64>)>);

impl Serialize for Ordered {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}
