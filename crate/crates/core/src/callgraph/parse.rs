use serde::{Deserialize, Serialize};

use super::method::{split_type_list, MethodRef};

/// JVM invocation kind recorded by the analyzer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CallKind {
    Virtual,
    Interface,
    Special,
    Static,
    Dynamic,
}

impl CallKind {
    pub fn from_code(code: char) -> Option<Self> {
        Some(match code {
            'M' => Self::Virtual,
            'I' => Self::Interface,
            'O' => Self::Special,
            'S' => Self::Static,
            'D' => Self::Dynamic,
            _ => return None,
        })
    }

    pub fn code(self) -> char {
        match self {
            Self::Virtual => 'M',
            Self::Interface => 'I',
            Self::Special => 'O',
            Self::Static => 'S',
            Self::Dynamic => 'D',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CallEdge {
    pub caller: MethodRef,
    pub callee: MethodRef,
    pub call_kind: CallKind,
}

/// One well-formed line of analyzer output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawRecord {
    /// `C:<class> <class>`
    ClassEdge { from: String, to: String },
    /// `M:<class>:<method>(<args>) (<K>)<class>:<method>(<args>)`
    MethodEdge(CallEdge),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseWarning {
    /// 1-based line number.
    pub line: usize,
    pub text: String,
    pub reason: &'static str,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParseOutput {
    pub records: Vec<RawRecord>,
    pub warnings: Vec<ParseWarning>,
}

/// Parses java-callgraph text output. Blank lines are skipped; malformed
/// lines become warnings.
pub fn parse_callgraph_text(text: &str) -> ParseOutput {
    let mut out = ParseOutput::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let parsed = if let Some(rest) = line.strip_prefix("M:") {
            parse_method_line(rest).map(RawRecord::MethodEdge)
        } else if let Some(rest) = line.strip_prefix("C:") {
            parse_class_line(rest)
        } else {
            Err("unknown record type")
        };
        match parsed {
            Ok(r) => out.records.push(r),
            Err(reason) => out.warnings.push(ParseWarning {
                line: idx + 1,
                text: raw.to_string(),
                reason,
            }),
        }
    }
    out
}

fn parse_class_line(rest: &str) -> Result<RawRecord, &'static str> {
    let mut parts = rest.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(from), Some(to), None) => Ok(RawRecord::ClassEdge {
            from: from.to_string(),
            to: to.to_string(),
        }),
        _ => Err("class line must name exactly two classes"),
    }
}

fn parse_method_line(rest: &str) -> Result<CallEdge, &'static str> {
    let (caller, callee) = rest
        .split_once(' ')
        .ok_or("missing callee in method line")?;
    let callee = callee.trim_start();
    let mut chars = callee.chars();
    let (Some('('), Some(code), Some(')')) = (chars.next(), chars.next(), chars.next()) else {
        return Err("missing call kind");
    };
    let call_kind = CallKind::from_code(code).ok_or("unknown call kind")?;
    Ok(CallEdge {
        caller: parse_method(caller)?,
        callee: parse_method(chars.as_str())?,
        call_kind,
    })
}

fn parse_method(s: &str) -> Result<MethodRef, &'static str> {
    let (class, rest) = s.split_once(':').ok_or("method without class")?;
    let open = rest.find('(').ok_or("method without argument list")?;
    let args = rest[open + 1..]
        .strip_suffix(')')
        .ok_or("unterminated argument list")?;
    MethodRef::new(class, &rest[..open], split_type_list(args))
        .map_err(|_| "empty class or method name")
}
