use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::callgraph::{MethodRef, ParseWarning};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Visibility {
    Public,
    Protected,
    Package,
    Private,
}

/// A method declaration recovered from a `javap` listing. Types are erased
/// (generic arguments dropped, type variables replaced by their bound) so
/// the method key matches the call-graph analyzer's keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodSignature {
    /// Identity of the method, with `return_type` filled in.
    pub method: MethodRef,
    pub return_type: String,
    pub param_types: Vec<String>,
    pub visibility: Visibility,
    #[serde(default)]
    pub is_static: bool,
}

impl MethodSignature {
    /// Signature stand-in for a method the listing does not describe.
    pub fn from_method(method: &MethodRef) -> Self {
        let return_type = method
            .return_type
            .clone()
            .unwrap_or_else(|| "void".to_string());
        Self {
            method: method.clone().with_return_type(return_type.clone()),
            return_type,
            param_types: method.param_types.clone(),
            visibility: Visibility::Public,
            is_static: false,
        }
    }

    pub fn key(&self) -> String {
        self.method.key()
    }

    /// `return_type method(param_types)`.
    pub fn text(&self) -> String {
        format!(
            "{} {}({})",
            self.return_type,
            self.method.method_name,
            self.param_types.join(", ")
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JavapOutput {
    pub signatures: BTreeMap<String, MethodSignature>,
    pub warnings: Vec<ParseWarning>,
}

impl JavapOutput {
    pub fn methods(&self) -> Vec<MethodRef> {
        self.signatures.values().map(|s| s.method.clone()).collect()
    }
}

const MODIFIERS: [&str; 12] = [
    "public",
    "protected",
    "private",
    "static",
    "final",
    "abstract",
    "synchronized",
    "native",
    "default",
    "strictfp",
    "transient",
    "volatile",
];

/// Splits on whitespace outside angle brackets.
fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '<' => depth += 1,
            '>' => depth -= 1,
            _ => {}
        }
        if c.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn strip_generics(s: &str) -> String {
    let mut depth = 0i32;
    s.chars()
        .filter(|&c| {
            match c {
                '<' => depth += 1,
                '>' => {
                    depth -= 1;
                    return false;
                }
                _ => {}
            }
            depth == 0 && c != '<'
        })
        .collect()
}

/// Parses `<T, U extends a.B>` into variable -> erased bound.
fn type_params(decl: &str, into: &mut HashMap<String, String>) {
    let inner = decl.trim().trim_start_matches('<').trim_end_matches('>');
    for part in crate::callgraph::split_params(inner) {
        let mut words = part.split_whitespace();
        let Some(name) = words.next() else { continue };
        let bound = match (words.next(), words.next()) {
            (Some("extends"), Some(b)) => strip_generics(b.split('&').next().unwrap_or(b)),
            _ => "java.lang.Object".to_string(),
        };
        into.insert(name.to_string(), bound);
    }
}

fn erase(ty: &str, vars: &HashMap<String, String>) -> String {
    let t = strip_generics(ty.trim());
    let mut base = t.as_str();
    let mut dims = 0;
    if let Some(b) = base.strip_suffix("...") {
        base = b;
        dims += 1;
    }
    while let Some(b) = base.strip_suffix("[]") {
        base = b;
        dims += 1;
    }
    let base = vars.get(base).map_or(base, String::as_str);
    format!("{base}{}", "[]".repeat(dims))
}

struct ClassHeader {
    fqn: String,
    vars: HashMap<String, String>,
}

fn parse_class_header(line: &str) -> Option<ClassHeader> {
    let body = line.strip_suffix('{')?.trim();
    let words = split_top_level(body);
    let pos = words.iter().position(|w| {
        matches!(
            w.as_str(),
            "class" | "interface" | "enum" | "record" | "@interface"
        )
    })?;
    let name = words.get(pos + 1)?;
    let mut vars = HashMap::new();
    let fqn = match name.find('<') {
        Some(i) => {
            type_params(&name[i..], &mut vars);
            name[..i].to_string()
        }
        None => name.clone(),
    };
    Some(ClassHeader { fqn, vars })
}

enum Member {
    Method(MethodSignature),
    Skipped,
}

fn parse_member(line: &str, class: &ClassHeader) -> Result<Member, &'static str> {
    let body = line
        .strip_suffix(';')
        .ok_or("member line must end with ';'")?
        .trim();
    if body == "static {}" {
        return Ok(Member::Skipped);
    }
    let Some(open) = body.find('(') else {
        return Ok(Member::Skipped);
    };
    let close = body.rfind(')').ok_or("unterminated parameter list")?;
    if close < open {
        return Err("unbalanced parameter list");
    }
    let head = split_top_level(&body[..open]);
    let params_text = &body[open + 1..close];

    let mut visibility = Visibility::Package;
    let mut is_static = false;
    let mut vars = class.vars.clone();
    let mut rest = Vec::new();
    for word in head {
        match word.as_str() {
            "public" => visibility = Visibility::Public,
            "protected" => visibility = Visibility::Protected,
            "private" => visibility = Visibility::Private,
            "static" => is_static = true,
            w if MODIFIERS.contains(&w) => {}
            w if w.starts_with('<') && rest.is_empty() => type_params(w, &mut vars),
            _ => rest.push(word),
        }
    }
    let (return_type, name) = match rest.as_slice() {
        [name] => (None, name.as_str()),
        [ret, name] => (Some(ret.as_str()), name.as_str()),
        _ => return Err("cannot identify method name"),
    };
    if return_type.is_none() || name == class.fqn || name.contains('.') {
        return Ok(Member::Skipped);
    }
    let params: Vec<String> = crate::callgraph::split_params(params_text)
        .iter()
        .map(|p| erase(p, &vars))
        .collect();
    let return_type = erase(return_type.unwrap_or("void"), &vars);
    let method = MethodRef::new(class.fqn.clone(), name, params.clone())
        .map_err(|_| "empty method name")?
        .with_return_type(return_type.clone());
    Ok(Member::Method(MethodSignature {
        method,
        return_type,
        param_types: params,
        visibility,
        is_static,
    }))
}

/// Parses concatenated `javap` output into signatures keyed by method key.
/// Constructors, static initializers and fields are skipped; lines outside
/// the grammar become warnings.
pub fn parse_javap(text: &str) -> JavapOutput {
    let mut out = JavapOutput::default();
    let mut class: Option<ClassHeader> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let warn = |out: &mut JavapOutput, reason| {
            out.warnings.push(ParseWarning {
                line: idx + 1,
                text: raw.to_string(),
                reason,
            })
        };
        if line.is_empty() || line.starts_with("Compiled from") {
            continue;
        }
        if line == "}" {
            class = None;
            continue;
        }
        if line.ends_with('{') {
            match parse_class_header(line) {
                Some(h) => class = Some(h),
                None => warn(&mut out, "unrecognized class header"),
            }
            continue;
        }
        let Some(current) = class.as_ref() else {
            warn(&mut out, "member outside of a class");
            continue;
        };
        match parse_member(line, current) {
            Ok(Member::Method(sig)) => {
                out.signatures.insert(sig.key(), sig);
            }
            Ok(Member::Skipped) => {}
            Err(reason) => warn(&mut out, reason),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const LISTING: &str = r#"Compiled from "Owner.java"
public class a.Owner extends a.Person {
  private java.lang.String city;
  public a.Owner(java.lang.String);
  public java.lang.String getCity();
  public void setOwner(a.Owner);
  protected java.util.Set<a.Pet> getPetsInternal();
  public <T extends a.Named> T pick(java.util.List<T>, int...);
  static java.lang.String[] names(java.util.Map<java.lang.String, a.Pet>) throws java.io.IOException;
  static {};
}
public interface a.OwnerRepository extends org.springframework.data.repository.Repository<a.Owner, java.lang.Integer> {
  public abstract a.Owner findById(java.lang.Integer) throws org.springframework.dao.DataAccessException;
}
public class a.Box<T> {
  public void put(T);
}
"#;

    fn parsed() -> JavapOutput {
        parse_javap(LISTING)
    }

    #[test]
    fn getter() {
        let out = parsed();
        let sig = &out.signatures["a.Owner:getCity()"];
        assert_eq!(sig.return_type, "java.lang.String");
        assert_eq!(sig.visibility, Visibility::Public);
        assert_eq!(sig.text(), "java.lang.String getCity()");
        assert_eq!(sig.method.return_type.as_deref(), Some("java.lang.String"));
    }

    #[test]
    fn constructors_and_fields_skipped() {
        let out = parsed();
        assert!(out
            .signatures
            .keys()
            .all(|k| !k.contains(":Owner(") && !k.contains("a.Owner(")));
        assert!(!out.signatures.keys().any(|k| k.contains("city")));
        assert!(out.warnings.is_empty(), "{:?}", out.warnings);
    }

    #[test]
    fn setter_params() {
        let sig = &parsed().signatures["a.Owner:setOwner(a.Owner)"];
        assert_eq!(sig.param_types, vec!["a.Owner".to_string()]);
        assert_eq!(sig.return_type, "void");
    }

    #[test]
    fn erasure_of_generics_varargs_and_type_vars() {
        let out = parsed();
        assert!(out.signatures.contains_key("a.Owner:getPetsInternal()"));
        assert_eq!(
            out.signatures["a.Owner:getPetsInternal()"].return_type,
            "java.util.Set"
        );
        let pick = &out.signatures["a.Owner:pick(java.util.List,int[])"];
        assert_eq!(pick.return_type, "a.Named");
        let names = &out.signatures["a.Owner:names(java.util.Map)"];
        assert!(names.is_static);
        assert_eq!(names.return_type, "java.lang.String[]");
        assert_eq!(names.visibility, Visibility::Package);
        assert!(out.signatures.contains_key("a.Box:put(java.lang.Object)"));
        assert!(out
            .signatures
            .contains_key("a.OwnerRepository:findById(java.lang.Integer)"));
    }

    #[test]
    fn unrecognized_lines_warn() {
        let out =
            parse_javap("public class a.X {\n  what is this\n  public void ok();\n}\nstray();\n");
        assert_eq!(out.signatures.len(), 1);
        assert_eq!(
            out.warnings.iter().map(|w| w.line).collect::<Vec<_>>(),
            vec![2, 5]
        );
    }

    #[test]
    fn fallback_signature() {
        let m = MethodRef::new("a.X", "go", vec!["int".into()]).unwrap();
        let s = MethodSignature::from_method(&m);
        assert_eq!(s.text(), "void go(int)");
    }
}
