//! Test corpora shared by the integration tests and the acceptance suite.
#![allow(dead_code)]

use std::collections::HashSet;
use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use rand::distributions::{Distribution, WeightedIndex};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub const SMALL: usize = 64 * 1024;
pub const DESK: usize = 5 * 1024 * 1024;
/// Size of the full benchmark files.
pub const FULL: usize = 50 * 1024 * 1024;

pub struct Corpus {
    pub name: String,
    pub bytes: Vec<u8>,
    /// Where the bytes came from: a supplied file, a local stand-in or a
    /// generator.
    pub origin: String,
}

impl Corpus {
    fn new(name: &str, bytes: Vec<u8>, origin: impl Into<String>) -> Self {
        Corpus {
            name: name.to_owned(),
            bytes,
            origin: origin.into(),
        }
    }
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut StdRng, n: usize, sigma: usize) -> Vec<u8> {
    let letters: Vec<u8> = (0..=255u8).collect::<Vec<_>>()[..sigma].to_vec();
    (0..n).map(|_| *letters.choose(rng).unwrap()).collect()
}

/// Symbols drawn with geometric weights `2^-i`.
pub fn skewed(rng: &mut StdRng, n: usize, sigma: usize) -> Vec<u8> {
    let w = WeightedIndex::new((0..sigma).map(|i| 0.5f64.powi(i as i32))).unwrap();
    (0..n).map(|_| b'A' + w.sample(rng) as u8).collect()
}

/// Order-`k` Markov source with random sparse transition weights.
pub fn markov(rng: &mut StdRng, n: usize, alphabet: &[u8], order: usize) -> Vec<u8> {
    let sigma = alphabet.len();
    let contexts = sigma.pow(order as u32);
    let tables: Vec<WeightedIndex<f64>> = (0..contexts)
        .map(|_| {
            let weights: Vec<f64> = (0..sigma)
                .map(|_| rng.gen::<f64>().powi(3) + 1e-3)
                .collect();
            WeightedIndex::new(weights).unwrap()
        })
        .collect();
    let mut ctx = 0usize;
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let s = tables[ctx].sample(rng);
        out.push(alphabet[s]);
        ctx = (ctx * sigma + s) % contexts;
    }
    out
}

/// DNA-like text: a Markov source with occasional copied repeats.
pub fn dna(rng: &mut StdRng, n: usize) -> Vec<u8> {
    let mut out = markov(rng, n, b"acgt", 3);
    let mut i = 0;
    while i + 2000 < n {
        if rng.gen_bool(0.3) && i > 5000 {
            let len = rng.gen_range(50..1000);
            let src = rng.gen_range(0..i - len);
            for k in 0..len {
                out[i + k] = if rng.gen_bool(0.02) {
                    b"acgt"[rng.gen_range(0..4)]
                } else {
                    out[src + k]
                };
            }
        }
        i += 2000;
    }
    out
}

const WORDS: &[&str] = &[
    "the", "of", "and", "to", "a", "in", "that", "is", "was", "he", "for", "it", "with", "as",
    "his", "on", "be", "at", "by", "I", "this", "had", "not", "are", "but", "from", "or", "have",
    "an", "they", "which", "one", "you", "were", "her", "all", "she", "there", "would", "their",
    "we", "him", "been", "has", "when", "who", "will", "more", "no", "if", "out", "so", "said",
    "what", "up", "its", "about", "into", "than", "them", "can", "only", "other", "new", "some",
    "could", "time", "these", "two", "may", "then", "do", "first", "any", "my", "now", "such",
    "like", "our", "over", "man", "me", "even", "most", "made", "after", "also", "did", "many",
    "before", "must", "through", "back", "years", "where", "much", "your", "way", "well", "down",
    "should", "because", "each", "just", "those", "people", "how", "too", "little", "state",
    "good", "very", "make", "world", "still", "own", "see", "men", "work", "long", "get", "here",
    "between", "both", "life", "being", "under", "never", "day", "same", "another", "know",
    "while", "last", "might", "us", "great", "old", "year", "off", "come", "since", "against",
    "go", "came", "right", "used", "take", "three", "house", "river", "morning", "letter",
    "captain", "garden", "question", "silence",
];

/// Sentences of Zipf-distributed words.
pub fn zipf_words(rng: &mut StdRng, n: usize) -> Vec<u8> {
    let w = WeightedIndex::new((1..=WORDS.len()).map(|r| 1.0 / r as f64)).unwrap();
    let mut out = Vec::with_capacity(n + 16);
    let mut start = true;
    while out.len() < n {
        let word = WORDS[w.sample(rng)];
        if start {
            let mut c = word.as_bytes().to_vec();
            c[0] = c[0].to_ascii_uppercase();
            out.extend_from_slice(&c);
        } else {
            out.extend_from_slice(word.as_bytes());
        }
        start = false;
        match rng.gen_range(0..20) {
            0 => out.extend_from_slice(b", "),
            1 => {
                out.extend_from_slice(if rng.gen_bool(0.2) { b".\n" } else { b". " });
                start = true;
            }
            _ => out.push(b' '),
        }
    }
    out.truncate(n);
    out
}

/// Bibliography-like XML records.
pub fn xml_records(rng: &mut StdRng, n: usize) -> Vec<u8> {
    let kinds = ["article", "inproceedings", "book", "phdthesis"];
    let venues = [
        "SPIRE",
        "CPM",
        "DCC",
        "ESA",
        "SODA",
        "Algorithmica",
        "TCS",
        "JACM",
    ];
    let surnames = [
        "Smith", "Nowak", "Garcia", "Kowalski", "Chen", "Ivanov", "Rossi", "Muller", "Tanaka",
        "Silva",
    ];
    let mut out = Vec::with_capacity(n + 512);
    out.extend_from_slice(b"<?xml version=\"1.0\" encoding=\"ISO-8859-1\"?>\n<dblp>\n");
    let mut key = 0u32;
    while out.len() < n {
        let kind = kinds[rng.gen_range(0..kinds.len())];
        let venue = venues[rng.gen_range(0..venues.len())];
        let year = rng.gen_range(1970..2024);
        key += rng.gen_range(1..40);
        let mut rec = format!(
            "<{kind} mdate=\"{}-0{}-1{}\" key=\"conf/{}/{key}\">\n",
            2000 + rng.gen_range(0..24),
            rng.gen_range(1..10),
            rng.gen_range(0..10),
            venue.to_lowercase()
        );
        for _ in 0..rng.gen_range(1..5) {
            let s = surnames[rng.gen_range(0..surnames.len())];
            rec += &format!(
                "<author>{} {s}</author>\n",
                (b'A' + rng.gen_range(0..26)) as char
            );
        }
        let title_len = rng.gen_range(20..80);
        let title: String = zipf_words(rng, title_len)
            .into_iter()
            .map(|b| if b == b'\n' { ' ' } else { b as char })
            .collect();
        rec += &format!("<title>{}.</title>\n<pages>{}-{}</pages>\n<year>{year}</year>\n<booktitle>{venue}</booktitle>\n</{kind}>\n", title.trim(), key % 300, key % 300 + rng.gen_range(5..20));
        out.extend_from_slice(rec.as_bytes());
    }
    out.truncate(n);
    out
}

pub fn fibonacci_word(n: usize) -> Vec<u8> {
    let (mut a, mut b) = (b"a".to_vec(), b"ab".to_vec());
    while b.len() < n {
        let next = [b.as_slice(), a.as_slice()].concat();
        a = b;
        b = next;
    }
    b.truncate(n);
    b
}

pub fn thue_morse(n: usize) -> Vec<u8> {
    (0..n)
        .map(|i| {
            if (i as u64).count_ones().is_multiple_of(2) {
                b'0'
            } else {
                b'1'
            }
        })
        .collect()
}

/// Binary de Bruijn sequence of order `k` (length `2^k`), prefer-ones.
pub fn de_bruijn(k: u32) -> Vec<u8> {
    let mask = (1usize << k) - 1;
    let mut seen = vec![false; 1 << k];
    let mut out = vec![b'0'; k as usize];
    let mut state = 0usize;
    seen[0] = true;
    loop {
        let one = ((state << 1) | 1) & mask;
        let zero = (state << 1) & mask;
        if !seen[one] {
            state = one;
            out.push(b'1');
        } else if !seen[zero] {
            state = zero;
            out.push(b'0');
        } else {
            break;
        }
        seen[state] = true;
    }
    out
}

fn periodic(n: usize, period: &[u8]) -> Vec<u8> {
    period.iter().copied().cycle().take(n).collect()
}

/// The `.rs` files of this crate, concatenated and cycled to `n` bytes.
pub fn own_sources(n: usize) -> Vec<u8> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let mut out = Vec::new();
    for dir in ["src", "tests"] {
        for path in sorted_files(&root.join(dir), |p| {
            p.extension().is_some_and(|e| e == "rs")
        }) {
            out.extend(fs::read(path).unwrap_or_default());
        }
    }
    assert!(!out.is_empty(), "crate sources not found");
    out.iter().copied().cycle().take(n).collect()
}

/// The twenty hermetic corpora the bound, cost and coding checks run on.
pub fn test_corpora() -> Vec<Corpus> {
    let n = SMALL;
    let r = &mut rng(2024);
    let g = |name: &str, bytes: Vec<u8>| Corpus::new(name, bytes, "generated");
    let mut noisy = periodic(n, b"abracadabra!x");
    for slot in noisy.iter_mut() {
        if r.gen_bool(0.01) {
            *slot = b"abcdrx!"[r.gen_range(0..7)];
        }
    }
    let mut runs = Vec::with_capacity(n);
    while runs.len() < n {
        let b = b"xyzw"[r.gen_range(0..4)];
        let len = r.gen_range(1..60);
        runs.extend(std::iter::repeat_n(b, len));
    }
    runs.truncate(n);
    let numbers: Vec<u8> = (1u32..)
        .flat_map(|i| format!("{}\n", i * 7).into_bytes())
        .take(n)
        .collect();
    let base64: Vec<u8> = {
        let table = b"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
        (0..n).map(|_| table[r.gen_range(0..64)]).collect()
    };
    let natural = match stand_in("english", n) {
        Some((bytes, origin)) => Corpus::new("natural-text", bytes, origin),
        None => g("natural-text", zipf_words(r, n)),
    };
    vec![
        g("random-2", uniform(r, n, 2)),
        g("random-4", uniform(r, n, 4)),
        g("random-26", uniform(r, n, 26)),
        g("random-256", uniform(r, n, 256)),
        g("skewed-16", skewed(r, n, 16)),
        g("periodic-7", periodic(n, b"abcdefg")),
        g("noisy-periodic", noisy),
        g("unary", vec![b'a'; n]),
        g("markov-dna", dna(r, n)),
        g("markov-protein", markov(r, n, b"ACDEFGHIKLMNPQRSTVWY", 1)),
        g("zipf-english", zipf_words(r, n)),
        g("xml-records", xml_records(r, n)),
        g("own-sources", own_sources(n)),
        g("fibonacci", fibonacci_word(n)),
        g("thue-morse", thue_morse(n)),
        g("de-bruijn-16", de_bruijn(16)),
        g("runs", runs),
        g("numbers", numbers),
        g("base64", base64),
        natural,
    ]
}

fn sorted_files(root: &Path, keep: impl Fn(&Path) -> bool) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = walkdir::WalkDir::new(root)
        .follow_links(false)
        .into_iter()
        .filter_map(Result::ok)
        .filter(|e| e.file_type().is_file() && keep(e.path()))
        .map(|e| e.into_path())
        .collect();
    files.sort();
    files
}

/// Concatenates distinct files until `limit` bytes are collected.
fn collect(sources: &[(&str, &str)], limit: usize) -> (Vec<u8>, Vec<String>) {
    let mut out = Vec::with_capacity(limit);
    let mut seen = HashSet::new();
    let mut used = Vec::new();
    for &(root, suffix) in sources {
        let files = sorted_files(Path::new(root), |p| p.to_string_lossy().ends_with(suffix));
        if files.is_empty() {
            continue;
        }
        used.push(format!("{root}/**/*{suffix}"));
        for f in files {
            let Ok(bytes) = fs::read(&f) else { continue };
            if bytes.is_empty() || !seen.insert(bytes.clone()) {
                continue;
            }
            out.extend_from_slice(&bytes);
            if out.len() >= limit {
                out.truncate(limit);
                return (out, used);
            }
        }
    }
    (out, used)
}

/// Local files resembling the benchmark corpus `name`, or `None` when the
/// system does not hold `limit` bytes of them.
pub fn stand_in(name: &str, limit: usize) -> Option<(Vec<u8>, String)> {
    let sources: &[(&str, &str)] = match name {
        "english" => &[
            ("/usr/share/doc", "/copyright"),
            ("/usr/share/perl", ".pod"),
            ("/usr/lib/node_modules", ".md"),
        ],
        "dblp.xml" => &[("/usr/share", ".xml")],
        "sources" => &[("/usr/include", ".h"), ("/usr/lib/python3.10", ".py")],
        _ => return None,
    };
    let (bytes, used) = collect(sources, limit);
    (bytes.len() >= limit).then(|| (bytes, format!("stand-in from {}", used.join(", "))))
}

/// A desk-scale version of benchmark corpus `name`: the first `limit`
/// bytes of `$BFPC_CORPUS_DIR/<name>` if present, otherwise a local
/// stand-in, otherwise a synthetic imitation.
pub fn desk_corpus(name: &str, limit: usize) -> Corpus {
    if let Some(dir) = env::var_os("BFPC_CORPUS_DIR") {
        let path = Path::new(&dir).join(name);
        if let Ok(mut bytes) = fs::read(&path) {
            bytes.truncate(limit);
            return Corpus::new(name, bytes, format!("supplied {}", path.display()));
        }
    }
    if let Some((bytes, origin)) = stand_in(name, limit) {
        return Corpus::new(name, bytes, origin);
    }
    let r = &mut rng(7);
    let bytes = match name {
        "english" => zipf_words(r, limit),
        "dblp.xml" => xml_records(r, limit),
        "sources" => own_sources(limit),
        _ => dna(r, limit),
    };
    Corpus::new(name, bytes, "synthetic")
}

/// The full benchmark file `name` if one of at least [`FULL`] bytes was
/// supplied.
pub fn full_corpus(name: &str) -> Option<Corpus> {
    let dir = env::var_os("BFPC_CORPUS_DIR")?;
    let path = Path::new(&dir).join(name);
    let mut bytes = fs::read(&path).ok()?;
    if bytes.len() < FULL {
        return None;
    }
    bytes.truncate(FULL);
    Some(Corpus::new(
        name,
        bytes,
        format!("supplied {}", path.display()),
    ))
}
