//! Reading input files into validated core objects, with diagnostics
//! pointing back into the files.

use std::sync::Arc;

use twistcon_core::morphism::RelationViolation;
use twistcon_core::pcgroup::ConsistencyViolation;
use twistcon_core::{Element, GroupMap, PcPresentation, PresentationError, RefinedGroup};

use crate::diagnostic::{Diagnostic, Span};
use crate::document::{
    parse_map_document, parse_presentation_document, parse_word, PresentationDocument, PresentationSpans,
};
use crate::Failure;

/// A consistent nilpotent presentation together with its source.
#[derive(Clone, Debug)]
pub struct LoadedGroup {
    pub name: String,
    pub path: String,
    pub document: PresentationDocument,
    pub spans: PresentationSpans,
    pub pc: Arc<PcPresentation>,
    pub refined: RefinedGroup,
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(Diagnostic::new(format!("cannot read {path}: {e}"))))
}

pub fn load_presentation(path: &str, max_class: usize) -> Result<LoadedGroup, Failure> {
    let text = read(path)?;
    let (document, spans) = parse_presentation_document(&text).map_err(|d| Failure::usage(d.in_file(path)))?;
    let pc = document
        .builder()
        .build_unverified()
        .map_err(|e| Failure::invalid(builder_error(&document, &spans, &e).in_file(path)))?;
    let violations = pc.consistency_check();
    if !violations.is_empty() {
        let diagnostics =
            violations.iter().map(|v| consistency_error(&pc, &document, &spans, v).in_file(path)).collect();
        return Err(Failure { code: crate::EXIT_INVALID, diagnostics });
    }
    let pc = Arc::new(pc);
    let refined = RefinedGroup::new(pc.clone(), max_class)
        .map_err(|e| Failure::invalid(Diagnostic::at(spans.header, e.to_string()).in_file(path)))?;
    Ok(LoadedGroup { name: document.name.clone(), path: path.to_string(), document, spans, pc, refined })
}

fn relation_span(document: &PresentationDocument, spans: &PresentationSpans, label: &str) -> Option<Span> {
    let names = document.names();
    document.relations.iter().position(|r| r.label(&names) == label).map(|k| spans.relations[k])
}

fn builder_error(document: &PresentationDocument, spans: &PresentationSpans, e: &PresentationError) -> Diagnostic {
    let span = match e {
        PresentationError::IndexRestriction { relation }
        | PresentationError::InverseConjugateOfFiniteGenerator { relation }
        | PresentationError::DuplicateRelation { relation } => relation_span(document, spans, relation),
        PresentationError::MissingInverseConjugate { relation } => {
            relation_span(document, spans, relation.strip_suffix("^-1").unwrap_or(relation))
        }
        PresentationError::PowerOfInfiniteGenerator { generator }
        | PresentationError::InvalidRelativeOrder { generator } => {
            document.generators.iter().position(|(n, _)| n == generator).map(|k| spans.generators[k])
        }
        PresentationError::UnknownGenerator { .. } | PresentationError::Inconsistent(_) => None,
    };
    let d = Diagnostic::new(e.to_string());
    Diagnostic { span: span.or(Some(spans.header)), ..d }
}

/// Locates an overlap failure at the last relation built only from the
/// generators of the overlap, else at the latest generator involved.
fn consistency_error(
    pc: &PcPresentation,
    document: &PresentationDocument,
    spans: &PresentationSpans,
    v: &ConsistencyViolation,
) -> Diagnostic {
    let span = document
        .relations
        .iter()
        .zip(&spans.relations)
        .filter(|(r, _)| r.generators().iter().all(|g| v.generators.contains(g)))
        .map(|(_, s)| *s)
        .max_by_key(|s| s.line)
        .or_else(|| v.generators.iter().max().map(|&g| spans.generators[g]))
        .unwrap_or(spans.header);
    Diagnostic::at(
        span,
        format!(
            "inconsistent presentation: overlap test `{}` fails ({} != {})",
            v.test,
            pc.format_element(&v.left),
            pc.format_element(&v.right)
        ),
    )
}

pub fn load_map(path: &str, group: &LoadedGroup) -> Result<GroupMap, Failure> {
    let text = read(path)?;
    let pc = &group.pc;
    let (doc, spans) = parse_map_document(&text, pc).map_err(|d| Failure::usage(d.in_file(path)))?;
    if doc.domain != group.name {
        return Err(Failure::invalid(
            Diagnostic::at(spans.header, format!("map is defined on `{}`, not on `{}`", doc.domain, group.name))
                .in_file(path),
        ));
    }
    let images: Vec<Element> = doc.images.iter().map(|w| pc.collect(w)).collect();
    GroupMap::endomorphism(pc.clone(), images).map_err(|e| match e {
        twistcon_core::Error::InvalidMap(violations) => Failure {
            code: crate::EXIT_INVALID,
            diagnostics: violations.iter().map(|v| map_error(pc, &spans.images, v).in_file(path)).collect(),
        },
        other => Failure::invalid(Diagnostic::at(spans.header, other.to_string()).in_file(path)),
    })
}

fn map_error(pc: &PcPresentation, image_spans: &[Span], v: &RelationViolation) -> Diagnostic {
    let span = v.generators.first().map(|&g| image_spans[g]).unwrap_or_default();
    Diagnostic::at(
        span,
        format!(
            "not an endomorphism: relation `{}` maps to {} != {}",
            v.relation,
            pc.format_element(&v.left),
            pc.format_element(&v.right)
        ),
    )
}

/// An element given on the command line under `flag`.
pub fn load_word(group: &LoadedGroup, flag: &str, text: &str) -> Result<Element, Failure> {
    parse_word(&group.pc, text).map_err(|d| Failure::usage(d.in_file(flag)))
}
