//! Property tests over randomly generated Java classes whose metrics are known
//! by construction of the generator.

use std::collections::BTreeMap;
use std::path::Path;

use proptest::prelude::*;

use classcone::extractor::{export_xml, parse_source, read_xml};
use classcone::metrics::{count_attributes, count_loc, count_methods};
use classcone::{ClassUnit, LocMode, MemberKind, SourceFile, Span};

#[derive(Debug, Clone)]
enum GenMember {
    Field(usize),
    Method,
    Constructor,
    Nested(GenClass),
    LineComment,
    BlockComment,
    Blank,
    Anonymous,
    Initializer,
}

#[derive(Debug, Clone)]
struct GenClass {
    members: Vec<GenMember>,
}

fn gen_class() -> impl Strategy<Value = GenClass> {
    let leaf = prop_oneof![
        (1usize..4).prop_map(GenMember::Field),
        Just(GenMember::Method),
        Just(GenMember::Constructor),
        Just(GenMember::LineComment),
        Just(GenMember::BlockComment),
        Just(GenMember::Blank),
        Just(GenMember::Anonymous),
        Just(GenMember::Initializer),
    ];
    let members = prop::collection::vec(leaf.clone(), 0..8);
    members
        .prop_map(|members| GenClass { members })
        .prop_recursive(3, 24, 6, move |inner| {
            prop::collection::vec(
                prop_oneof![4 => leaf.clone(), 1 => inner.prop_map(GenMember::Nested)],
                0..8,
            )
            .prop_map(|members| GenClass { members })
        })
}

fn brace_payload() -> impl Strategy<Value = String> {
    "[{} ]{0,6}"
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Expected {
    depth: usize,
    nom: usize,
    noa: usize,
    physical: usize,
    sloc: usize,
}

struct Renderer<'p> {
    payload: &'p str,
    lines: Vec<String>,
    code: Vec<bool>,
    next_id: usize,
    expected: BTreeMap<String, Expected>,
}

impl Renderer<'_> {
    fn line(&mut self, text: String, is_code: bool) {
        self.lines.push(text);
        self.code.push(is_code);
    }

    fn id(&mut self) -> usize {
        self.next_id += 1;
        self.next_id
    }

    fn class(&mut self, c: &GenClass, name: &str, qualified: &str, depth: usize) {
        let pad = "    ".repeat(depth);
        let start = self.lines.len();
        let keyword = if depth == 0 { "public class" } else { "static class" };
        self.line(format!("{pad}{keyword} {name} {{"), true);
        let (mut nom, mut noa) = (0, 0);
        let p = self.payload.to_owned();
        for m in &c.members {
            let id = self.id();
            match m {
                GenMember::Field(n) => {
                    let decls: Vec<String> = (0..*n).map(|j| format!("f{id}_{j} = \"{p}\"")).collect();
                    self.line(format!("{pad}    String {};", decls.join(", ")), true);
                    noa += n;
                }
                GenMember::Method => {
                    self.line(format!("{pad}    void m{id}() {{ /* {p} */ }}"), true);
                    nom += 1;
                }
                GenMember::Constructor => {
                    self.line(format!("{pad}    {name}(int a{id}) {{"), true);
                    self.line(format!("{pad}        String s = \"{p}\"; // {p}"), true);
                    self.line(format!("{pad}    }}"), true);
                    nom += 1;
                }
                GenMember::Nested(inner) => {
                    let inner_name = format!("N{id}");
                    self.class(inner, &inner_name, &format!("{qualified}.{inner_name}"), depth + 1);
                }
                GenMember::LineComment => self.line(format!("{pad}    // {p}"), false),
                GenMember::BlockComment => {
                    self.line(format!("{pad}    /* {p}"), false);
                    self.line(format!("{pad}     * {p}"), false);
                    self.line(format!("{pad}     */"), false);
                }
                GenMember::Blank => self.line(String::new(), false),
                GenMember::Anonymous => {
                    self.line(format!("{pad}    Runnable r{id} = new Runnable() {{"), true);
                    self.line(format!("{pad}        int hidden{id};"), true);
                    self.line(format!("{pad}        public void run() {{ char c = '{{'; }}"), true);
                    self.line(format!("{pad}    }};"), true);
                    noa += 1;
                }
                GenMember::Initializer => {
                    self.line(format!("{pad}    {{"), true);
                    self.line(format!("{pad}        int local{id} = \"{p}\".length();"), true);
                    self.line(format!("{pad}    }}"), true);
                }
            }
        }
        self.line(format!("{pad}}}"), true);
        let end = self.lines.len();
        self.expected.insert(
            qualified.to_owned(),
            Expected {
                depth,
                nom,
                noa,
                physical: end - start,
                sloc: self.code[start..end].iter().filter(|&&c| c).count(),
            },
        );
    }
}

fn render(c: &GenClass, payload: &str) -> (String, BTreeMap<String, Expected>) {
    let mut r = Renderer {
        payload,
        lines: Vec::new(),
        code: Vec::new(),
        next_id: 0,
        expected: BTreeMap::new(),
    };
    r.line("package gen;".into(), true);
    r.line(String::new(), false);
    r.class(c, "Root", "gen.Root", 0);
    let mut text = r.lines.join("\n");
    text.push('\n');
    (text, r.expected)
}

fn parse(text: &str) -> (SourceFile, Vec<ClassUnit>) {
    let src = SourceFile::from_text("/gen/Root.java", text);
    let classes = parse_source(&src).expect("generated source parses");
    (src, classes)
}

type Shape = (String, Span, Vec<(MemberKind, String, Span)>);

fn structure(classes: &[ClassUnit]) -> Vec<Shape> {
    classes
        .iter()
        .map(|c| {
            (
                c.qualified_name.clone(),
                c.span,
                c.members.iter().map(|m| (m.kind, m.name.clone(), m.span)).collect(),
            )
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn counts_match_construction(c in gen_class(), payload in brace_payload()) {
        let (text, expected) = render(&c, &payload);
        let (src, classes) = parse(&text);
        let got: BTreeMap<String, Expected> = classes
            .iter()
            .map(|u| {
                (
                    u.qualified_name.clone(),
                    Expected {
                        depth: u.nesting_depth,
                        nom: count_methods(u),
                        noa: count_attributes(u),
                        physical: count_loc(u, &src, LocMode::Physical).unwrap(),
                        sloc: count_loc(u, &src, LocMode::Sloc).unwrap(),
                    },
                )
            })
            .collect();
        prop_assert_eq!(got, expected, "source:\n{}", text);
    }

    #[test]
    fn braces_in_comments_and_strings_are_neutral(c in gen_class(), payload in brace_payload()) {
        let (plain, _) = render(&c, "");
        let (trapped, _) = render(&c, &payload);
        prop_assert_eq!(structure(&parse(&plain).1), structure(&parse(&trapped).1));
    }

    #[test]
    fn containment_and_depth(c in gen_class()) {
        let (text, _) = render(&c, "{");
        let (src, classes) = parse(&text);
        for u in &classes {
            prop_assert!(u.span.end_line <= src.line_count);
            for m in &u.members {
                prop_assert!(u.span.contains(&m.span), "{} member {:?}", u.qualified_name, m);
            }
            if let Some((outer, _)) = u.qualified_name.rsplit_once('.') {
                if let Some(parent) = classes.iter().find(|p| p.qualified_name == outer) {
                    prop_assert!(parent.span.contains(&u.span));
                    prop_assert_eq!(u.nesting_depth, parent.nesting_depth + 1);
                }
            }
        }
    }

    #[test]
    fn parse_is_deterministic(c in gen_class()) {
        let (text, _) = render(&c, "}{");
        let src = SourceFile::from_text("/gen/Root.java", &text);
        prop_assert_eq!(parse_source(&src).unwrap(), parse_source(&src).unwrap());
    }

    #[test]
    fn xml_read_back_agrees(c in gen_class()) {
        let (text, _) = render(&c, "<&>");
        let (src, classes) = parse(&text);
        let mut sources = BTreeMap::new();
        sources.insert(src.path.clone(), src);
        let doc = export_xml(&classes, &sources, Path::new("/gen"));
        let back = read_xml(&doc).unwrap();
        let mut a: Vec<_> = back.iter().map(|x| (x.qualified_name.clone(), x.kind, x.span, x.members.len())).collect();
        let mut b: Vec<_> = classes.iter().map(|u| (u.qualified_name.clone(), u.kind, u.span, u.members.len())).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        prop_assert_eq!(doc.clone(), export_xml(&classes, &sources, Path::new("/gen")));
    }

    #[test]
    fn physical_loc_dominates_sloc(c in gen_class()) {
        let (text, _) = render(&c, "");
        let (src, classes) = parse(&text);
        for u in &classes {
            let physical = count_loc(u, &src, LocMode::Physical).unwrap();
            let sloc = count_loc(u, &src, LocMode::Sloc).unwrap();
            prop_assert!(sloc <= physical && physical <= src.line_count && physical >= 1);
        }
    }

    #[test]
    fn comment_lines_only_move_physical_loc(c in gen_class(), extra in 1usize..5) {
        let mut commented = c.clone();
        for _ in 0..extra {
            commented.members.insert(0, GenMember::LineComment);
        }
        let (a_text, _) = render(&c, "");
        let (b_text, _) = render(&commented, "");
        let (a_src, a) = parse(&a_text);
        let (b_src, b) = parse(&b_text);
        let root_a = &a[0];
        let root_b = &b[0];
        prop_assert_eq!(count_methods(root_a), count_methods(root_b));
        prop_assert_eq!(count_attributes(root_a), count_attributes(root_b));
        prop_assert_eq!(count_loc(root_a, &a_src, LocMode::Sloc), count_loc(root_b, &b_src, LocMode::Sloc));
        prop_assert_eq!(
            count_loc(root_a, &a_src, LocMode::Physical).unwrap() + extra,
            count_loc(root_b, &b_src, LocMode::Physical).unwrap()
        );
    }
}
