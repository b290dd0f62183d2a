/// Lowercased terms of length >= 2. Splits on anything that is not
/// alphanumeric and on identifier case boundaries, so `HTTPException`
/// gives `http`, `exception`.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    for word in text.split(|c: char| !c.is_alphanumeric()) {
        if !word.is_empty() {
            split_case(word, &mut out);
        }
    }
    out
}

fn split_case(word: &str, out: &mut Vec<String>) {
    let chars: Vec<char> = word.chars().collect();
    let mut start = 0;
    for i in 1..chars.len() {
        let (prev, cur) = (chars[i - 1], chars[i]);
        let lower_to_upper = (prev.is_lowercase() || prev.is_numeric()) && cur.is_uppercase();
        let acronym_end =
            prev.is_uppercase() && cur.is_uppercase() && chars.get(i + 1).is_some_and(|c| c.is_lowercase());
        if lower_to_upper || acronym_end {
            push_term(&chars[start..i], out);
            start = i;
        }
    }
    push_term(&chars[start..], out);
}

fn push_term(chars: &[char], out: &mut Vec<String>) {
    if chars.len() >= 2 {
        out.push(chars.iter().collect::<String>().to_lowercase());
    }
}
