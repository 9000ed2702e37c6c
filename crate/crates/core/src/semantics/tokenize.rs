/// Splits an identifier into lowercase word tokens.
///
/// Boundaries are non-alphanumeric characters (underscores, `$`, `<`...),
/// lower-to-upper case changes, digit-to-letter changes, and the last
/// capital of an acronym run that precedes a lowercase letter, so
/// `HTTPServer` gives `[http, server]` and `utf8Decode` gives
/// `[utf8, decode]`.
pub fn tokenize_identifier(name: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for run in name.split(|c: char| !c.is_alphanumeric()) {
        let chars: Vec<char> = run.chars().collect();
        let mut start = 0;
        for i in 1..chars.len() {
            let (prev, cur) = (chars[i - 1], chars[i]);
            let next_lower = chars.get(i + 1).is_some_and(|c| c.is_lowercase());
            let split = (prev.is_lowercase() && cur.is_uppercase())
                || (prev.is_numeric() && cur.is_alphabetic())
                || (prev.is_uppercase() && cur.is_uppercase() && next_lower);
            if split {
                tokens.push(lower(&chars[start..i]));
                start = i;
            }
        }
        if start < chars.len() {
            tokens.push(lower(&chars[start..]));
        }
    }
    tokens
}

fn lower(chars: &[char]) -> String {
    chars.iter().flat_map(|c| c.to_lowercase()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(s: &str) -> Vec<String> {
        tokenize_identifier(s)
    }

    #[test]
    fn camel_case() {
        assert_eq!(t("findPetById"), ["find", "pet", "by", "id"]);
        assert_eq!(t("getCity"), ["get", "city"]);
        assert_eq!(t("x"), ["x"]);
    }

    #[test]
    fn acronyms_digits_underscores() {
        assert_eq!(t("HTTPServer"), ["http", "server"]);
        assert_eq!(t("getHTTP"), ["get", "http"]);
        assert_eq!(t("utf8Decode"), ["utf8", "decode"]);
        assert_eq!(t("base64encode"), ["base64", "encode"]);
        assert_eq!(t("MAX_VALUE"), ["max", "value"]);
        assert_eq!(t("__init__"), ["init"]);
        assert_eq!(t("<init>"), ["init"]);
        assert_eq!(t("lambda$main$0"), ["lambda", "main", "0"]);
        assert_eq!(t("PetType"), ["pet", "type"]);
    }

    #[test]
    fn separators_only() {
        assert!(t("_$_").is_empty());
    }

    proptest! {
        #[test]
        fn camel_join_round_trips(tokens in prop::collection::vec("[a-z]{2,8}", 1..6)) {
            let joined: String = tokens
                .iter()
                .enumerate()
                .map(|(i, w)| if i == 0 { w.clone() } else { w[..1].to_uppercase() + &w[1..] })
                .collect();
            prop_assert_eq!(t(&joined), tokens);
        }

        #[test]
        fn underscore_join_round_trips(tokens in prop::collection::vec("[a-z]{1,8}", 1..6)) {
            prop_assert_eq!(t(&tokens.join("_")), tokens);
        }

        #[test]
        fn tokens_are_lowercase_without_separators(name in "[A-Za-z0-9_$]{1,24}") {
            for tok in t(&name) {
                prop_assert!(!tok.is_empty());
                prop_assert!(tok.chars().all(|c| c.is_alphanumeric() && !c.is_uppercase()));
            }
        }
    }
}
