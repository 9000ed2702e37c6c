use super::classify::is_lexicon_verb;
use super::pos::PosTagger;
use crate::semantics::tokenize_identifier;

/// `[a-z0-9]+(-[a-z0-9]+)*`
pub fn is_kebab_segment(s: &str) -> bool {
    !s.is_empty()
        && s.split('-').all(|part| {
            !part.is_empty()
                && part
                    .bytes()
                    .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit())
        })
}

fn ascii_token(token: &str) -> String {
    token
        .chars()
        .filter(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
        .collect()
}

/// Joins ASCII-reduced tokens with hyphens. Identifiers with no ASCII
/// letters or digits map to `x` followed by a hash of the identifier.
fn join_tokens<'a>(tokens: impl IntoIterator<Item = &'a String>, original: &str) -> String {
    let parts: Vec<String> = tokens
        .into_iter()
        .map(|t| ascii_token(t))
        .filter(|t| !t.is_empty())
        .collect();
    if parts.is_empty() {
        let h = original.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
        });
        return format!("x{:08x}", h as u32);
    }
    parts.join("-")
}

/// Lowercase, hyphen-separated form of an identifier: `PetType` -> `pet-type`.
pub fn kebab_case(identifier: &str) -> String {
    join_tokens(&tokenize_identifier(identifier), identifier)
}

/// URI segment for a method name. Multi-word names lose their verbs: first
/// every word tagged or listed as a verb, or, if that leaves nothing, just
/// the HTTP lexicon verbs. Names made only of lexicon verbs keep all words.
pub fn method_segment(name: &str, tagger: &PosTagger) -> String {
    let tokens = tokenize_identifier(name);
    if tokens.len() > 1 {
        let tiers: [&dyn Fn(&str) -> bool; 2] =
            [&|t| !tagger.is_verb(t) && !is_lexicon_verb(t), &|t| {
                !is_lexicon_verb(t)
            }];
        for keep in tiers {
            let kept: Vec<&String> = tokens.iter().filter(|t| keep(t)).collect();
            if !kept.is_empty() {
                return join_tokens(kept, name);
            }
        }
    }
    join_tokens(&tokens, name)
}
