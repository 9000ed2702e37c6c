use serde_json::{json, Map, Value};

use super::tree::{ApiOperation, ApiTree};
use super::{HttpVerb, RestifyError};
use crate::callgraph::simple_type_name as callgraph_simple_name;

const URL_PRIMITIVES: &[&str] = &[
    "byte",
    "short",
    "int",
    "long",
    "float",
    "double",
    "boolean",
    "char",
    "java.lang.Byte",
    "java.lang.Short",
    "java.lang.Integer",
    "java.lang.Long",
    "java.lang.Float",
    "java.lang.Double",
    "java.lang.Boolean",
    "java.lang.Character",
    "java.lang.String",
];

/// True for types that can sit in a URL segment.
pub fn is_url_primitive(java_type: &str) -> bool {
    URL_PRIMITIVES.contains(&java_type)
}

/// JSON schema for a Java type name.
pub fn schema_for_type(java_type: &str) -> Value {
    if let Some(inner) = java_type.strip_suffix("[]") {
        return json!({"type": "array", "items": schema_for_type(inner)});
    }
    match java_type {
        "byte" | "short" | "int" | "java.lang.Byte" | "java.lang.Short" | "java.lang.Integer" => {
            json!({"type": "integer", "format": "int32"})
        }
        "long" | "java.lang.Long" => json!({"type": "integer", "format": "int64"}),
        "float" | "java.lang.Float" => json!({"type": "number", "format": "float"}),
        "double" | "java.lang.Double" => json!({"type": "number", "format": "double"}),
        "boolean" | "java.lang.Boolean" => json!({"type": "boolean"}),
        "char" | "java.lang.Character" | "java.lang.String" => json!({"type": "string"}),
        "java.util.List" | "java.util.Set" | "java.util.Collection" | "java.lang.Iterable" => {
            json!({"type": "array", "items": {"type": "object"}})
        }
        other => json!({"type": "object", "x-java-type": callgraph_simple_name(other)}),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OpenApiDocument {
    pub document: Value,
    pub warnings: Vec<String>,
}

fn operation_object(op: &ApiOperation) -> Value {
    let mut o = Map::new();
    o.insert("operationId".into(), json!(op.method_key));
    o.insert("summary".into(), json!(op.signature));
    let mut params: Vec<Value> = op
        .path_params
        .iter()
        .zip(&op.param_types)
        .map(|(name, ty)| {
            json!({"name": name, "in": "path", "required": true, "schema": schema_for_type(ty)})
        })
        .collect();
    if op.path_params.is_empty() && !op.param_types.is_empty() {
        match op.verb {
            HttpVerb::Get | HttpVerb::Delete => {
                params.extend(op.param_types.iter().enumerate().map(|(i, ty)| {
                    json!({"name": format!("param{}", i + 1), "in": "query", "required": true,
                           "schema": schema_for_type(ty)})
                }));
            }
            HttpVerb::Post | HttpVerb::Put => {
                let props: Map<String, Value> = op
                    .param_types
                    .iter()
                    .enumerate()
                    .map(|(i, ty)| (format!("param{}", i + 1), schema_for_type(ty)))
                    .collect();
                let required: Vec<String> = props.keys().cloned().collect();
                o.insert(
                    "requestBody".into(),
                    json!({"required": true, "content": {"application/json": {"schema":
                        {"type": "object", "properties": props, "required": required}}}}),
                );
            }
        }
    }
    if !params.is_empty() {
        o.insert("parameters".into(), Value::Array(params));
    }
    let responses = if op.return_type == "void" {
        json!({"204": {"description": "No content"}})
    } else {
        json!({"200": {"description": "OK", "content": {"application/json":
            {"schema": schema_for_type(&op.return_type)}}}})
    };
    o.insert("responses".into(), responses);
    o.insert("x-confidence".into(), json!(op.confidence));
    o.insert("x-classification-source".into(), json!(op.source));
    if op.fallback {
        o.insert("x-classification-fallback".into(), json!(true));
    }
    Value::Object(o)
}

/// OpenAPI 3.0.3 document for one cluster tree. `metadata` is attached
/// under `x-mono2rest`.
pub fn export_openapi(
    tree: &ApiTree,
    version: &str,
    metadata: Option<&Value>,
) -> Result<OpenApiDocument, RestifyError> {
    let mut paths: Map<String, Value> = Map::new();
    let mut warnings = Vec::new();
    let ops = tree.operations();
    if ops.is_empty() {
        warnings.push(format!("cluster {} exposes no operations", tree.root.name));
    }
    for (path, op) in ops {
        let entry = paths.entry(path.clone()).or_insert_with(|| json!({}));
        let obj = entry.as_object_mut().expect("path item is an object");
        if obj.contains_key(op.verb.openapi_key()) {
            return Err(RestifyError::DuplicatePathVerb {
                path,
                verb: op.verb,
            });
        }
        obj.insert(op.verb.openapi_key().into(), operation_object(op));
    }
    let mut doc = json!({
        "openapi": "3.0.3",
        "info": {"title": tree.root.name, "version": version},
        "paths": paths,
    });
    if let Some(m) = metadata {
        doc["x-mono2rest"] = m.clone();
    }
    Ok(OpenApiDocument {
        document: doc,
        warnings,
    })
}
