//! Problem files: JSON with complex numbers as `[re, im]`.
//!
//! ```text
//! {
//!   "algebra": {"blocks": [n₁, …]},
//!   "module": {"rank": N, "projection": operator?},
//!   "frames": {name: [element, …]},
//!   "operators": {name: operator}
//! }
//! element  = [entry, …]            (N entries)
//! operator = [[entry, …], …]       (rows of entries)
//! entry    = [block, …]            (one per algebra block)
//! block    = [row, …]              (nᵢ rows of nᵢ complex numbers)
//! ```
//!
//! The canonical form has sorted keys, two-space indentation, one frame
//! element or operator row per line and every real written with `%.17g`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde_json::{Map, Value};

use super::number::format_exact;
use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::frame::ModuleFrame;
use crate::linalg::CMat;
use crate::module::{ModuleElement, ModuleOperator, ProjectiveModule};
use crate::tol;

/// A validation failure with the JSON path or source position it refers to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub location: String,
    pub message: String,
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for InputError {}

fn fail<T>(location: &str, message: impl Into<String>) -> Result<T, InputError> {
    Err(InputError {
        location: location.to_string(),
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemFile {
    pub spec: AlgebraSpec,
    pub module: ProjectiveModule,
    /// Whether the projection was given explicitly.
    pub explicit_projection: bool,
    pub frames: BTreeMap<String, Vec<ModuleElement>>,
    pub operators: BTreeMap<String, ModuleOperator>,
}

impl ProblemFile {
    pub fn new(module: ProjectiveModule) -> Self {
        let explicit_projection =
            module != ProjectiveModule::free(module.spec(), module.ambient_rank());
        Self {
            spec: module.spec().clone(),
            module,
            explicit_projection,
            frames: BTreeMap::new(),
            operators: BTreeMap::new(),
        }
    }

    pub fn with_frame(mut self, name: &str, frame: &ModuleFrame) -> Self {
        self.frames
            .insert(name.to_string(), frame.elements().to_vec());
        self
    }

    pub fn parse(text: &str) -> Result<Self, InputError> {
        let root: Value = serde_json::from_str(text).map_err(|e| InputError {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        let root = as_object(&root, "$")?;
        for key in root.keys() {
            if !matches!(key.as_str(), "algebra" | "module" | "frames" | "operators") {
                return fail(&format!("$.{key}"), "unknown field");
            }
        }

        let algebra = as_object(required(root, "algebra", "$")?, "$.algebra")?;
        let blocks = as_array(
            required(algebra, "blocks", "$.algebra")?,
            "$.algebra.blocks",
        )?
        .iter()
        .enumerate()
        .map(|(i, v)| as_count(v, &format!("$.algebra.blocks[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
        let spec = AlgebraSpec::new(blocks).or_else(|e| fail("$.algebra.blocks", e.to_string()))?;

        let module_obj = as_object(required(root, "module", "$")?, "$.module")?;
        let rank = as_count(required(module_obj, "rank", "$.module")?, "$.module.rank")?;
        if rank == 0 {
            return fail("$.module.rank", "rank must be positive");
        }
        let (module, explicit_projection) = match module_obj.get("projection") {
            None => (ProjectiveModule::free(&spec, rank), false),
            Some(v) => {
                let p = parse_operator(&spec, v, "$.module.projection")?;
                if p.rows() != rank || p.cols() != rank {
                    return fail(
                        "$.module.projection",
                        format!("expected {rank}x{rank}, found {}x{}", p.rows(), p.cols()),
                    );
                }
                let m = ProjectiveModule::new(p, tol::PROJECTION_EQUALITY)
                    .or_else(|e| fail("$.module.projection", e.to_string()))?;
                (m, true)
            }
        };

        let mut frames = BTreeMap::new();
        if let Some(v) = root.get("frames") {
            for (name, frame) in as_object(v, "$.frames")? {
                let path = format!("$.frames.{name}");
                let elements = as_array(frame, &path)?
                    .iter()
                    .enumerate()
                    .map(|(j, x)| parse_element(&spec, rank, x, &format!("{path}[{j}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                frames.insert(name.clone(), elements);
            }
        }

        let mut operators = BTreeMap::new();
        if let Some(v) = root.get("operators") {
            for (name, op) in as_object(v, "$.operators")? {
                let path = format!("$.operators.{name}");
                operators.insert(name.clone(), parse_operator(&spec, op, &path)?);
            }
        }

        Ok(Self {
            spec,
            module,
            explicit_projection,
            frames,
            operators,
        })
    }

    /// The named frame, validated against the module.
    pub fn frame(&self, name: &str) -> Result<ModuleFrame, InputError> {
        let path = format!("$.frames.{name}");
        let elements = match self.frames.get(name) {
            Some(e) => e.clone(),
            None => {
                let known: Vec<&str> = self.frames.keys().map(String::as_str).collect();
                return fail(
                    &path,
                    format!("no such frame (available: {})", known.join(", ")),
                );
            }
        };
        ModuleFrame::with_tolerance(self.module.clone(), elements, tol::PROJECTION_EQUALITY)
            .or_else(|e| fail(&path, e.to_string()))
    }

    pub fn operator(&self, name: &str) -> Result<&ModuleOperator, InputError> {
        self.operators.get(name).ok_or_else(|| InputError {
            location: format!("$.operators.{name}"),
            message: "no such operator".into(),
        })
    }

    /// Canonical text.
    pub fn write(&self) -> String {
        let mut out = String::from("{\n");
        let mut sections = Vec::new();
        sections.push(format!(
            "  \"algebra\": {{\n    \"blocks\": [{}]\n  }}",
            self.spec
                .blocks()
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        ));
        if !self.frames.is_empty() {
            let body: Vec<String> = self
                .frames
                .iter()
                .map(|(name, elements)| {
                    let items: Vec<String> = elements.iter().map(element_literal).collect();
                    format!("    {}: {}", quote(name), list_block(&items, 4))
                })
                .collect();
            sections.push(format!("  \"frames\": {{\n{}\n  }}", body.join(",\n")));
        }
        let mut module = "  \"module\": {\n".to_string();
        if self.explicit_projection {
            let rows = operator_rows(self.module.projection());
            let _ = writeln!(module, "    \"projection\": {},", list_block(&rows, 4));
        }
        let _ = write!(module, "    \"rank\": {}\n  }}", self.module.ambient_rank());
        sections.push(module);
        if !self.operators.is_empty() {
            let body: Vec<String> = self
                .operators
                .iter()
                .map(|(name, op)| {
                    format!("    {}: {}", quote(name), list_block(&operator_rows(op), 4))
                })
                .collect();
            sections.push(format!("  \"operators\": {{\n{}\n  }}", body.join(",\n")));
        }
        out.push_str(&sections.join(",\n"));
        out.push_str("\n}\n");
        out
    }
}

fn quote(s: &str) -> String {
    Value::String(s.to_string()).to_string()
}

/// `[` newline, one item per line at `indent + 2`, `]` at `indent`.
fn list_block(items: &[String], indent: usize) -> String {
    if items.is_empty() {
        return "[]".into();
    }
    let pad = " ".repeat(indent + 2);
    let body: Vec<String> = items.iter().map(|i| format!("{pad}{i}")).collect();
    format!("[\n{}\n{}]", body.join(",\n"), " ".repeat(indent))
}

fn complex_literal(z: Complex64) -> String {
    format!("[{}, {}]", format_exact(z.re), format_exact(z.im))
}

fn block_literal(m: &CMat) -> String {
    let rows: Vec<String> = (0..m.nrows())
        .map(|r| {
            let entries: Vec<String> = (0..m.ncols()).map(|c| complex_literal(m[(r, c)])).collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn entry_literal(a: &AlgebraElement) -> String {
    let blocks: Vec<String> = a.blocks().iter().map(block_literal).collect();
    format!("[{}]", blocks.join(", "))
}

fn element_literal(x: &ModuleElement) -> String {
    let entries: Vec<String> = x.entries().iter().map(entry_literal).collect();
    format!("[{}]", entries.join(", "))
}

fn operator_rows(t: &ModuleOperator) -> Vec<String> {
    (0..t.rows()).map(|i| element_literal(&t.row(i))).collect()
}

fn required<'a>(
    obj: &'a Map<String, Value>,
    key: &str,
    path: &str,
) -> Result<&'a Value, InputError> {
    obj.get(key).ok_or_else(|| InputError {
        location: format!("{path}.{key}"),
        message: "missing field".into(),
    })
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, InputError> {
    v.as_object().ok_or_else(|| InputError {
        location: path.into(),
        message: "expected an object".into(),
    })
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, InputError> {
    v.as_array().ok_or_else(|| InputError {
        location: path.into(),
        message: "expected an array".into(),
    })
}

fn as_count(v: &Value, path: &str) -> Result<usize, InputError> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| InputError {
        location: path.into(),
        message: "expected a non-negative integer".into(),
    })
}

fn as_array_of_len<'a>(
    v: &'a Value,
    len: usize,
    what: &str,
    path: &str,
) -> Result<&'a Vec<Value>, InputError> {
    let a = as_array(v, path)?;
    if a.len() != len {
        return fail(path, format!("expected {len} {what}, found {}", a.len()));
    }
    Ok(a)
}

fn parse_complex(v: &Value, path: &str) -> Result<Complex64, InputError> {
    let pair = as_array_of_len(v, 2, "numbers [re, im]", path)?;
    let part = |i: usize| {
        pair[i]
            .as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| InputError {
                location: format!("{path}[{i}]"),
                message: "expected a finite number".into(),
            })
    };
    Ok(Complex64::new(part(0)?, part(1)?))
}

fn parse_entry(spec: &AlgebraSpec, v: &Value, path: &str) -> Result<AlgebraElement, InputError> {
    let blocks = as_array_of_len(v, spec.num_blocks(), "blocks", path)?;
    let mats = blocks
        .iter()
        .zip(spec.blocks())
        .enumerate()
        .map(|(b, (block, &n))| {
            let bpath = format!("{path}[{b}]");
            let rows = as_array_of_len(block, n, "rows", &bpath)?;
            let mut m = CMat::zeros(n, n);
            for (r, row) in rows.iter().enumerate() {
                let rpath = format!("{bpath}[{r}]");
                let cells = as_array_of_len(row, n, "entries", &rpath)?;
                for (c, cell) in cells.iter().enumerate() {
                    m[(r, c)] = parse_complex(cell, &format!("{rpath}[{c}]"))?;
                }
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>, InputError>>()?;
    AlgebraElement::from_blocks(spec, mats).or_else(|e| fail(path, e.to_string()))
}

fn parse_element(
    spec: &AlgebraSpec,
    len: usize,
    v: &Value,
    path: &str,
) -> Result<ModuleElement, InputError> {
    let entries = as_array_of_len(v, len, "entries", path)?
        .iter()
        .enumerate()
        .map(|(i, e)| parse_entry(spec, e, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    ModuleElement::from_entries(spec, &entries).or_else(|e| fail(path, e.to_string()))
}

fn parse_operator(spec: &AlgebraSpec, v: &Value, path: &str) -> Result<ModuleOperator, InputError> {
    let rows = as_array(v, path)?;
    if rows.is_empty() {
        return fail(path, "operator has no rows");
    }
    let width = as_array(&rows[0], &format!("{path}[0]"))?.len();
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let rpath = format!("{path}[{i}]");
            as_array_of_len(row, width, "entries", &rpath)?
                .iter()
                .enumerate()
                .map(|(k, e)| parse_entry(spec, e, &format!("{rpath}[{k}]")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    ModuleOperator::from_entries(spec, &parsed).or_else(|e| fail(path, e.to_string()))
}
