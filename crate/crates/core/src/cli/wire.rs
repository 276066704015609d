//! JSON input and output documents.
//!
//! Every document carries a top-level `kind` and the list of alternative
//! names it is written over. Menus are lists of names in universe order;
//! filters are written as their full table plus the rule that produced
//! them, when there is one.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::attention::{FilterSpace, FilterUtilityModel};
use crate::dataset::ChoiceDataset;
use crate::error::{Error, Result};
use crate::filter::{build_filter, Filter, Rule};
use crate::ordered::{OrderedFilter, OrderedRule};
use crate::preference::Preference;
use crate::universe::{Alt, Menu, Universe};

pub type MenuNames = Vec<String>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Universe(UniverseDoc),
    Filter(FilterDoc),
    OrderedFilter(OrderedFilterDoc),
    UtilityModel(UtilityModelDoc),
    ChoiceDataset(DatasetDoc),
    FilterSpace(FilterSpaceDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Universe(_) => "universe",
            Document::Filter(_) => "filter",
            Document::OrderedFilter(_) => "ordered-filter",
            Document::UtilityModel(_) => "utility-model",
            Document::ChoiceDataset(_) => "choice-dataset",
            Document::FilterSpace(_) => "filter-space",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniverseDoc {
    pub alternatives: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum RuleDoc {
    FixedSet {
        members: MenuNames,
    },
    Threshold {
        scores: BTreeMap<String, f64>,
        cutoff: f64,
    },
    TopK {
        order: Vec<String>,
        k: usize,
    },
    SatisficingPrefix {
        listing: Vec<String>,
        acceptable: MenuNames,
        k: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FilterDoc {
    pub alternatives: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<(MenuNames, MenuNames)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum OrderedRuleDoc {
    /// An unordered filter applied to the listed set.
    Lift {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table: Option<Vec<(MenuNames, MenuNames)>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rule: Option<RuleDoc>,
    },
    FirstK {
        k: usize,
    },
    Satisficing {
        acceptable: MenuNames,
        k: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderedFilterDoc {
    pub alternatives: Vec<String>,
    pub rule: OrderedRuleDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UtilityModelDoc {
    pub alternatives: Vec<String>,
    /// Best first.
    pub preference: Vec<String>,
    pub benefit: BTreeMap<String, f64>,
    #[serde(default)]
    pub benefit_none: f64,
    /// Indexed by cardinality `0..=|X|`.
    pub cost: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecordDoc {
    pub menu: MenuNames,
    pub choice: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetDoc {
    pub alternatives: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    pub records: Vec<RecordDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceEntryDoc {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<(MenuNames, MenuNames)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FilterSpaceDoc {
    pub alternatives: Vec<String>,
    pub filters: Vec<SpaceEntryDoc>,
}

/// Attaches a location to errors raised while decoding a document.
#[derive(Clone)]
pub struct Source {
    pub location: String,
}

impl Source {
    pub fn new(location: impl Into<String>) -> Self {
        Source {
            location: location.into(),
        }
    }

    fn at(&self, field: &str) -> Source {
        Source::new(format!("{}: {field}", self.location))
    }

    fn err(&self, message: impl ToString) -> Error {
        Error::Parse {
            location: self.location.clone(),
            message: message.to_string(),
        }
    }

    fn wrap<T>(&self, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            e @ Error::Parse { .. } => e,
            e => self.err(e),
        })
    }
}

#[derive(Deserialize)]
struct KindProbe {
    kind: String,
}

/// Reads the `kind` first, then decodes the whole text as that document
/// type so that errors keep their line and column.
pub fn parse_document(text: &str, source: &Source) -> Result<Document> {
    fn typed<T: serde::de::DeserializeOwned>(text: &str, source: &Source) -> Result<T> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            location: format!("{}:{}:{}", source.location, e.line(), e.column()),
            message: e.to_string(),
        })
    }
    let probe: KindProbe = typed(text, source)?;
    Ok(match probe.kind.as_str() {
        "universe" => Document::Universe(typed(text, source)?),
        "filter" => Document::Filter(typed(text, source)?),
        "ordered-filter" => Document::OrderedFilter(typed(text, source)?),
        "utility-model" => Document::UtilityModel(typed(text, source)?),
        "choice-dataset" => Document::ChoiceDataset(typed(text, source)?),
        "filter-space" => Document::FilterSpace(typed(text, source)?),
        other => return Err(source.at("kind").err(format!("unknown document kind `{other}`"))),
    })
}

pub fn read_document(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        location: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_document(&text, &Source::new(path.display().to_string()))
}

pub fn to_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

// ---- decoding ----

pub fn decode_universe(names: &[String], cap: usize, source: &Source) -> Result<Universe> {
    source
        .at("alternatives")
        .wrap(Universe::with_cap(names.iter().cloned(), cap))
}

fn decode_alt(u: &Universe, name: &str, source: &Source) -> Result<Alt> {
    u.alt(name)
        .ok_or_else(|| source.err(format!("unknown alternative `{name}`")))
}

fn decode_menu(u: &Universe, names: &[String], source: &Source) -> Result<Menu> {
    let mut menu = Menu::EMPTY;
    for n in names {
        let a = decode_alt(u, n, source)?;
        if menu.contains(a) {
            return Err(source.err(format!("alternative `{n}` listed twice")));
        }
        menu = menu.with(a);
    }
    Ok(menu)
}

fn decode_sequence(u: &Universe, names: &[String], source: &Source) -> Result<Vec<Alt>> {
    source.wrap(u.sequence(names))
}

fn decode_rule(u: &Universe, doc: &RuleDoc, source: &Source) -> Result<Rule> {
    let rule = match doc {
        RuleDoc::FixedSet { members } => Rule::FixedSet(decode_menu(u, members, &source.at("members"))?),
        RuleDoc::Threshold { scores, cutoff } => {
            for name in scores.keys() {
                decode_alt(u, name, &source.at("scores"))?;
            }
            let scores = u
                .names()
                .iter()
                .map(|n| {
                    scores
                        .get(n)
                        .copied()
                        .ok_or_else(|| source.at("scores").err(format!("no score for `{n}`")))
                })
                .collect::<Result<Vec<f64>>>()?;
            Rule::Threshold {
                scores,
                cutoff: *cutoff,
            }
        }
        RuleDoc::TopK { order, k } => Rule::TopK {
            order: decode_sequence(u, order, &source.at("order"))?,
            k: *k,
        },
        RuleDoc::SatisficingPrefix { listing, acceptable, k } => Rule::SatisficingPrefix {
            listing: decode_sequence(u, listing, &source.at("listing"))?,
            acceptable: decode_menu(u, acceptable, &source.at("acceptable"))?,
            k: *k,
        },
    };
    source.wrap(rule.validate(u))?;
    Ok(rule)
}

fn decode_table(u: &Universe, rows: &[(MenuNames, MenuNames)], source: &Source) -> Result<Filter> {
    let mut table: Vec<Option<Menu>> = vec![None; u.menu_count()];
    for (i, (menu, image)) in rows.iter().enumerate() {
        let here = source.at(&format!("table[{i}]"));
        let m = decode_menu(u, menu, &here)?;
        let g = decode_menu(u, image, &here)?;
        if !g.is_subset_of(m) {
            return Err(here.err(format!("considered set {} is not a subset of {}", u.show(g), u.show(m))));
        }
        if table[m.code()].replace(g).is_some() {
            return Err(here.err(format!("menu {} listed twice", u.show(m))));
        }
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(code, g)| {
            g.ok_or_else(|| {
                source
                    .at("table")
                    .err(format!("no entry for menu {}", u.show(Menu::from_bits(code as u32))))
            })
        })
        .collect::<Result<Vec<Menu>>>()?;
    source.wrap(Filter::from_table(u, table))
}

fn decode_filter_body(
    u: &Universe,
    table: Option<&[(MenuNames, MenuNames)]>,
    rule: Option<&RuleDoc>,
    source: &Source,
) -> Result<Filter> {
    match (table, rule) {
        (None, None) => Err(source.err("a filter needs a `table`, a `rule`, or both")),
        (Some(rows), None) => decode_table(u, rows, source),
        (None, Some(r)) => {
            let rule = decode_rule(u, r, &source.at("rule"))?;
            source.wrap(build_filter(u, rule))
        }
        (Some(rows), Some(r)) => {
            let listed = decode_table(u, rows, source)?;
            let rule = decode_rule(u, r, &source.at("rule"))?;
            let built = source.wrap(build_filter(u, rule))?;
            if let Some(m) = built.first_difference(&listed) {
                return Err(source.err(format!(
                    "table and rule disagree on {}: table {} but rule {}",
                    u.show(m),
                    u.show(listed.apply(m)),
                    u.show(built.apply(m))
                )));
            }
            Ok(built)
        }
    }
}

pub fn decode_filter(doc: &FilterDoc, cap: usize, source: &Source) -> Result<Filter> {
    let u = decode_universe(&doc.alternatives, cap, source)?;
    decode_filter_body(&u, doc.table.as_deref(), doc.rule.as_ref(), source)
}

pub fn decode_ordered_filter(doc: &OrderedFilterDoc, cap: usize, source: &Source) -> Result<OrderedFilter> {
    let u = decode_universe(&doc.alternatives, cap, source)?;
    let here = source.at("rule");
    let rule = match &doc.rule {
        OrderedRuleDoc::Lift { table, rule } => {
            OrderedRule::Lift(decode_filter_body(&u, table.as_deref(), rule.as_ref(), &here)?)
        }
        OrderedRuleDoc::FirstK { k } => OrderedRule::FirstK(*k),
        OrderedRuleDoc::Satisficing { acceptable, k } => OrderedRule::Satisficing {
            acceptable: decode_menu(&u, acceptable, &here.at("acceptable"))?,
            k: *k,
        },
    };
    here.wrap(OrderedFilter::new(&u, rule))
}

pub fn decode_utility_model(doc: &UtilityModelDoc, cap: usize, source: &Source) -> Result<FilterUtilityModel> {
    let u = decode_universe(&doc.alternatives, cap, source)?;
    let preference = source
        .at("preference")
        .wrap(Preference::from_names(&u, &doc.preference))?;
    for name in doc.benefit.keys() {
        decode_alt(&u, name, &source.at("benefit"))?;
    }
    let benefit = u
        .names()
        .iter()
        .map(|n| {
            doc.benefit
                .get(n)
                .copied()
                .ok_or_else(|| source.at("benefit").err(format!("no benefit for `{n}`")))
        })
        .collect::<Result<Vec<f64>>>()?;
    source.wrap(FilterUtilityModel::with_benefit_none(
        preference,
        benefit,
        doc.cost.clone(),
        doc.benefit_none,
    ))
}

pub fn decode_dataset(doc: &DatasetDoc, cap: usize, source: &Source) -> Result<ChoiceDataset> {
    let u = decode_universe(&doc.alternatives, cap, source)?;
    let mut ds = ChoiceDataset::new(&u);
    for (i, r) in doc.records.iter().enumerate() {
        let here = source.at(&format!("records[{i}]"));
        let menu = decode_menu(&u, &r.menu, &here)?;
        let choice = r.choice.as_deref().map(|c| decode_alt(&u, c, &here)).transpose()?;
        here.wrap(ds.record(menu, choice))?;
    }
    Ok(match &doc.provenance {
        Some(p) => ds.with_provenance(p.clone()),
        None => ds,
    })
}

pub fn decode_filter_space(doc: &FilterSpaceDoc, cap: usize, source: &Source) -> Result<FilterSpace> {
    let u = decode_universe(&doc.alternatives, cap, source)?;
    let mut filters = Vec::new();
    let mut labels = Vec::new();
    for (i, e) in doc.filters.iter().enumerate() {
        let here = source.at(&format!("filters[{i}]"));
        filters.push(decode_filter_body(&u, e.table.as_deref(), e.rule.as_ref(), &here)?);
        labels.push(e.label.clone());
    }
    source.wrap(FilterSpace::new(filters, labels))
}

// ---- encoding ----

pub fn encode_menu(u: &Universe, menu: Menu) -> MenuNames {
    u.menu_names(menu)
}

fn encode_sequence(u: &Universe, seq: &[Alt]) -> Vec<String> {
    seq.iter().map(|&a| u.name(a).to_owned()).collect()
}

pub fn encode_rule(u: &Universe, rule: &Rule) -> Option<RuleDoc> {
    Some(match rule {
        Rule::FixedSet(y) => RuleDoc::FixedSet {
            members: encode_menu(u, *y),
        },
        Rule::Threshold { scores, cutoff } => RuleDoc::Threshold {
            scores: u.names().iter().cloned().zip(scores.iter().copied()).collect(),
            cutoff: *cutoff,
        },
        Rule::TopK { order, k } => RuleDoc::TopK {
            order: encode_sequence(u, order),
            k: *k,
        },
        Rule::SatisficingPrefix { listing, acceptable, k } => RuleDoc::SatisficingPrefix {
            listing: encode_sequence(u, listing),
            acceptable: encode_menu(u, *acceptable),
            k: *k,
        },
        Rule::ExplicitTable => return None,
    })
}

pub fn encode_table(filter: &Filter) -> Vec<(MenuNames, MenuNames)> {
    let u = filter.universe();
    u.menus()
        .map(|m| (encode_menu(u, m), encode_menu(u, filter.apply(m))))
        .collect()
}

pub fn encode_filter(filter: &Filter) -> FilterDoc {
    let u = filter.universe();
    FilterDoc {
        alternatives: u.names().to_vec(),
        table: Some(encode_table(filter)),
        rule: encode_rule(u, filter.provenance()),
    }
}

pub fn encode_ordered_filter(filter: &OrderedFilter) -> OrderedFilterDoc {
    let u = filter.universe();
    OrderedFilterDoc {
        alternatives: u.names().to_vec(),
        rule: match filter.rule() {
            OrderedRule::Lift(f) => OrderedRuleDoc::Lift {
                table: Some(encode_table(f)),
                rule: encode_rule(u, f.provenance()),
            },
            OrderedRule::FirstK(k) => OrderedRuleDoc::FirstK { k: *k },
            OrderedRule::Satisficing { acceptable, k } => OrderedRuleDoc::Satisficing {
                acceptable: encode_menu(u, *acceptable),
                k: *k,
            },
        },
    }
}

pub fn encode_utility_model(model: &FilterUtilityModel) -> UtilityModelDoc {
    let u = model.universe();
    UtilityModelDoc {
        alternatives: u.names().to_vec(),
        preference: model.preference().names(),
        benefit: u.names().iter().cloned().zip(model.benefit().iter().copied()).collect(),
        benefit_none: model.benefit_none(),
        cost: model.cost().to_vec(),
    }
}

pub fn encode_dataset(ds: &ChoiceDataset) -> DatasetDoc {
    let u = ds.universe();
    DatasetDoc {
        alternatives: u.names().to_vec(),
        provenance: ds.provenance().map(str::to_owned),
        records: ds
            .records()
            .map(|(m, c)| RecordDoc {
                menu: encode_menu(u, m),
                choice: c.map(|c| u.name(c).to_owned()),
            })
            .collect(),
    }
}

pub fn encode_filter_space(space: &FilterSpace) -> FilterSpaceDoc {
    let u = space.universe();
    FilterSpaceDoc {
        alternatives: u.names().to_vec(),
        filters: space
            .filters()
            .iter()
            .zip(space.labels())
            .map(|(f, label)| SpaceEntryDoc {
                label: label.clone(),
                table: Some(encode_table(f)),
                rule: encode_rule(u, f.provenance()),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universe::DEFAULT_UNIVERSE_CAP;

    fn src() -> Source {
        Source::new("test.json")
    }

    #[test]
    fn filter_roundtrip() {
        let u = Universe::new(["a", "b", "c"]).unwrap();
        let f = build_filter(
            &u,
            Rule::Threshold {
                scores: vec![1.0, 0.5, 2.0],
                cutoff: 1.0,
            },
        )
        .unwrap();
        let text = to_json(&Document::Filter(encode_filter(&f)));
        let Document::Filter(doc) = parse_document(&text, &src()).unwrap() else {
            panic!()
        };
        let back = decode_filter(&doc, DEFAULT_UNIVERSE_CAP, &src()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.provenance(), f.provenance());
        assert_eq!(to_json(&Document::Filter(encode_filter(&back))), text);
    }

    #[test]
    fn rule_only_filter() {
        let text = r#"{"kind":"filter","alternatives":["1","2","3"],
            "rule":{"type":"fixed-set","members":["2","3"]}}"#;
        let Document::Filter(doc) = parse_document(text, &src()).unwrap() else {
            panic!()
        };
        let f = decode_filter(&doc, DEFAULT_UNIVERSE_CAP, &src()).unwrap();
        let u = f.universe().clone();
        assert_eq!(f.on_full(), u.menu(&["2", "3"]).unwrap());
    }

    #[test]
    fn errors_carry_locations() {
        let bad_json = "{\"kind\": \"filter\",\n \"alternatives\": [1]}";
        match parse_document(bad_json, &src()) {
            Err(Error::Parse { location, .. }) => assert!(location.starts_with("test.json:2:")),
            other => panic!("{other:?}"),
        }

        let partial = r#"{"kind":"filter","alternatives":["a","b"],
            "table":[[[],[]],[["a"],["a"]],[["b"],[]]]}"#;
        let Document::Filter(doc) = parse_document(partial, &src()).unwrap() else {
            panic!()
        };
        match decode_filter(&doc, DEFAULT_UNIVERSE_CAP, &src()) {
            Err(Error::Parse { location, message }) => {
                assert_eq!(location, "test.json: table");
                assert!(message.contains("{a,b}"));
            }
            other => panic!("{other:?}"),
        }

        let expanding = r#"{"kind":"filter","alternatives":["a","b"],
            "table":[[[],[]],[["a"],["a","b"]],[["b"],[]],[["a","b"],[]]]}"#;
        let Document::Filter(doc) = parse_document(expanding, &src()).unwrap() else {
            panic!()
        };
        match decode_filter(&doc, DEFAULT_UNIVERSE_CAP, &src()) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "test.json: table[1]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn table_and_rule_must_agree() {
        let text = r#"{"kind":"filter","alternatives":["a","b"],
            "table":[[[],[]],[["a"],["a"]],[["b"],["b"]],[["a","b"],["a","b"]]],
            "rule":{"type":"top-k","order":["a","b"],"k":1}}"#;
        let Document::Filter(doc) = parse_document(text, &src()).unwrap() else {
            panic!()
        };
        assert!(decode_filter(&doc, DEFAULT_UNIVERSE_CAP, &src()).is_err());
    }

    #[test]
    fn dataset_roundtrip() {
        let u = Universe::new(["x", "y"]).unwrap();
        let ds = ChoiceDataset::from_records(&u, [(u.menu(&["x"]).unwrap(), None), (u.full(), u.alt("y"))])
            .unwrap()
            .with_provenance("hand written");
        let text = to_json(&Document::ChoiceDataset(encode_dataset(&ds)));
        assert!(text.contains("\"choice\": null"));
        let Document::ChoiceDataset(doc) = parse_document(&text, &src()).unwrap() else {
            panic!()
        };
        assert_eq!(decode_dataset(&doc, DEFAULT_UNIVERSE_CAP, &src()).unwrap(), ds);
    }
}
