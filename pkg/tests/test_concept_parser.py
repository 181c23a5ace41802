import logging

import pytest
from hypothesis import given, settings, strategies as st

from conceptacc.concept_parser import (
    extract_concepts,
    load_lexicon,
    load_rules,
    measure_coverage,
    parse_lexicon,
    parse_rules,
)
from conceptacc.corpus_io import tokenize
from conceptacc.errors import ConfigError
from conceptacc.semantics import SemanticUnit as U


def parse(grammar, text):
    return grammar.parse(tokenize(text))


def test_worked_sentence(grammar):
    assert parse(grammar, "I want to go from Bonn to Berlin") == (
        U("sourcecity", "bonn"),
        U("goalcity", "berlin"),
    )


def test_marker_sentence(grammar):
    assert parse(grammar, "No to Bonn") == (U("dm_marker", "no"), U("goalcity", "bonn"))


def test_misrecognized_fillers_ignored(grammar):
    assert parse(grammar, "I wonder go to Berlin") == (U("goalcity", "berlin"),)


def test_multiword_longest_match(grammar):
    assert parse(grammar, "from new york via bad godesberg") == (
        U("sourcecity", "new york"),
        U("via_city", "bad godesberg"),
    )
    assert parse(grammar, "the day after tomorrow") == (U("date", "day after tomorrow"),)


def test_other_categories(grammar):
    assert parse(grammar, "okay an intercity on monday at 10:30") == (
        U("dm_marker", "yes"),
        U("train_type", "intercity"),
        U("date", "monday"),
        U("time", "10:30"),
    )
    assert parse(grammar, "i need to arrive by noon") == (U("want_arrival", "noon"),)


def test_bare_city_defaults_to_goal(grammar, caplog):
    with caplog.at_level(logging.INFO, logger="conceptacc.concept_parser"):
        assert parse(grammar, "bonn") == (U("goalcity", "bonn"),)
    assert "ambiguous" in caplog.text


def test_repeated_slots_kept_in_order(grammar):
    assert parse(grammar, "to bonn no to berlin") == (
        U("goalcity", "bonn"),
        U("dm_marker", "no"),
        U("goalcity", "berlin"),
    )


def test_empty_and_trace(grammar):
    assert parse(grammar, "") == ()
    trace = []
    grammar.parse(tokenize("um from bonn"), trace)
    assert any("skip 'um'" in t for t in trace)
    assert any("sourcecity:bonn" in t for t in trace)


@settings(max_examples=200)
@given(st.lists(st.text(max_size=8), max_size=12))
def test_total_on_arbitrary_tokens(grammar, tokens):
    units = grammar.parse(tokens)
    assert isinstance(units, tuple)
    assert all(u.attribute and u.value for u in units)


@given(st.data())
def test_filler_insensitive(grammar, synthetic, data):
    rec = data.draw(st.sampled_from(synthetic))
    fillers = sorted(grammar.lexicon.filler_words)
    tokens = list(rec.ref_transcript)
    for _ in range(data.draw(st.integers(1, 4))):
        pos = data.draw(st.integers(0, len(tokens)))
        word = data.draw(st.sampled_from(fillers))
        if pos < len(tokens) and tokens[pos] in grammar.lexicon.filler_words and data.draw(st.booleans()):
            tokens[pos] = word  # filler -> filler substitution
        else:
            tokens.insert(pos, word)
    assert grammar.parse(tokens) == grammar.parse(rec.ref_transcript)


@given(st.data())
def test_content_sensitive(grammar, synthetic, data):
    rec = data.draw(st.sampled_from(synthetic))
    cities = sorted(grammar.lexicon.city_names)
    city_units = [i for i, u in enumerate(rec.ref_annotation) if u.value in cities and "city" in u.attribute]
    if not city_units:
        return
    k = data.draw(st.sampled_from(city_units))
    old = rec.ref_annotation[k].value
    used = {u.value for u in rec.ref_annotation}
    new = data.draw(st.sampled_from([c for c in cities if c not in used]))
    # replace the span of the k-th city occurrence in the transcript
    text = " " + " ".join(rec.ref_transcript) + " "
    nth = sum(1 for u in rec.ref_annotation[:k] if u.value == old)
    start = -1
    for _ in range(nth + 1):
        start = text.index(f" {old} ", start + 1)
    changed = text[:start] + f" {new} " + text[start + len(old) + 2:]
    got = grammar.parse(changed.split())
    expected = list(rec.ref_annotation)
    expected[k] = U(expected[k].attribute, new)
    assert got == tuple(expected)


def test_deterministic(grammar, synthetic):
    for rec in synthetic[:50]:
        assert grammar.parse(rec.ref_transcript) == grammar.parse(rec.ref_transcript)


def test_coverage_on_synthetic_corpus(grammar, synthetic):
    assert measure_coverage(synthetic, grammar.lexicon, grammar.rules) == 100.0


def test_bundled_lexicon_invariants(grammar):
    lex = grammar.lexicon
    assert not lex.city_names & lex.filler_words
    assert not set(lex.marker_words) & lex.city_names
    assert "bonn" in lex.city_names and lex.marker_words["no"] == "no"


def test_lexicon_sections():
    lex = parse_lexicon("[cities]\nbonn, berlin, hamburg\n")
    assert lex.city_names == {"bonn", "berlin", "hamburg"}


@pytest.mark.parametrize(
    "text",
    [
        "bonn\n",
        "[planets]\nmars\n",
        "[cities]\nbonn\n[fillers]\nbonn\n",
        "[cities]\nnew york\n[fillers]\nnew\n",
        "[markers]\nno\n",
        "[time_patterns]\n([\n",
        "[cities]\nbonn\n[dates]\nbonn\n",
    ],
)
def test_lexicon_errors(text):
    with pytest.raises(ConfigError):
        parse_lexicon(text)


def test_rule_file(inventory):
    rules = parse_rules("[triggers]\nfrom <city> -> sourcecity\n", inventory=inventory)
    assert len(rules.triggers) == 1
    rule = rules.triggers[0]
    assert (rule.trigger, rule.category, rule.attribute) == (("from",), "city", "sourcecity")
    assert parse_rules("[triggers]\nfrom <city> → sourcecity\n", inventory=inventory) == rules


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("[triggers]\nfrom <city> -> foo\n", 2),
        ("[triggers]\n\nfrom <planet> -> goalcity\n", 3),
        ("[triggers]\nfrom city goalcity\n", 2),
        ("[defaults]\ncity -> goalcity\ncity -> date\n", 3),
        ("[misc]\nx -> y\n", 2),
    ],
)
def test_rule_errors(inventory, text, lineno):
    with pytest.raises(ConfigError) as err:
        parse_rules(text, "rules.txt", inventory=inventory)
    assert err.value.line == lineno
    assert f"rules.txt:{lineno}" in str(err.value)


def test_rule_trigger_may_not_be_filler(inventory):
    lex = parse_lexicon("[cities]\nbonn\n[fillers]\nto\n")
    with pytest.raises(ConfigError):
        parse_rules("[triggers]\nto <city> -> goalcity\n", inventory=inventory, lexicon=lex)


def test_marker_value_checked_against_inventory(inventory):
    lex = parse_lexicon("[markers]\nperhaps = maybe\n")
    with pytest.raises(ConfigError):
        parse_rules("[defaults]\nmarker -> dm_marker\n", inventory=inventory, lexicon=lex)


def test_load_from_files(tmp_path, inventory):
    (tmp_path / "lex.txt").write_text("[cities]\nulm\n[fillers]\nplease\n")
    (tmp_path / "rules.txt").write_text("[triggers]\nnach <city> -> goalcity\n")
    lex = load_lexicon(tmp_path / "lex.txt")
    rules = load_rules(tmp_path / "rules.txt", inventory, lex)
    assert extract_concepts(["please", "nach", "ulm"], lex, rules) == (U("goalcity", "ulm"),)
