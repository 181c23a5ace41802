import math
from statistics import fmean, pvariance

import pytest
from hypothesis import given, strategies as st

from conceptacc.corpus_io import (
    CorpusStats,
    Slot,
    UtteranceRecord,
    corpus_stats,
    dumps_corpus,
    generate_synthetic_corpus,
    load_corpus,
    loads_corpus,
    parse_templates,
    render_stats,
    save_corpus,
)
from conceptacc.errors import ConfigError, FormatError, UnknownAttribute
from conceptacc.semantics import SemanticUnit as U

EXAMPLE3 = """\
# marker plus destination
ID u1
REF No to Bonn
SEM dm_marker:no; goalcity:Bonn
"""


def test_load_example_block(inventory):
    (r,) = loads_corpus(EXAMPLE3, inventory)
    assert r.id == "u1" and r.dialogue_id == "u1"
    assert r.ref_transcript == ("no", "to", "bonn")
    assert r.ref_annotation == (U("dm_marker", "no"), U("goalcity", "bonn"))
    assert r.hyp_transcript is None and r.hyp_annotation is None
    assert corpus_stats([r]) == CorpusStats(1, 1, 3, 2, 2)


def test_empty_file(inventory):
    assert loads_corpus("", inventory) == []
    assert loads_corpus("\n# nothing\n\n", inventory) == []


def test_missing_sem_names_line(inventory, tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("ID a\nREF x\nSEM goalcity:ulm\n\n\nID b\nREF y\n")
    with pytest.raises(FormatError) as err:
        load_corpus(path, inventory)
    assert err.value.line == 6
    assert f"{path}:6" in str(err.value) and "SEM" in str(err.value)


@pytest.mark.parametrize(
    "text",
    [
        "ID a\nREF x\nSEM\nFOO bar\n",
        "ID a\nREF x\nREF y\nSEM\n",
        "ID a\nREF x\nSEM\n\nID a\nREF y\nSEM\n",
        "ID\nREF x\nSEM\n",
        "ID a\nREF x\nSEM goalcity\n",
    ],
)
def test_format_errors(inventory, text):
    with pytest.raises(FormatError):
        loads_corpus(text, inventory)


def test_unknown_attribute_propagates(inventory):
    with pytest.raises(UnknownAttribute):
        loads_corpus("ID a\nREF x\nSEM planet:mars\n", inventory)


def test_full_record_round_trip(inventory, tmp_path):
    text = (
        "ID u1\nDLG d1\nREF no to bonn\nHYP no to berlin\n"
        "SEM dm_marker:no; goalcity:bonn\nHYPSEM dm_marker:no; goalcity:berlin\n"
        "\n"
        "ID u2\nDLG d1\nREF\nHYP uh\nSEM\nHYPSEM\n"
    )
    records = loads_corpus(text, inventory)
    assert records[1].ref_transcript == () and records[1].hyp_annotation == ()
    assert dumps_corpus(records) == text
    save_corpus(records, tmp_path / "c.txt")
    assert (tmp_path / "c.txt").read_text() == text
    assert load_corpus(tmp_path / "c.txt", inventory) == records


def test_generated_corpus_round_trips(inventory, synthetic):
    text = dumps_corpus(synthetic)
    assert dumps_corpus(loads_corpus(text, inventory)) == text
    assert loads_corpus(text, inventory) == synthetic


def test_stats():
    rs = [
        UtteranceRecord("a", "d1", ("no", "to", "bonn"), (U("dm_marker", "no"), U("goalcity", "bonn"))),
        UtteranceRecord("b", "d1", ("to", "berlin"), (U("goalcity", "berlin"),)),
    ]
    assert corpus_stats(rs) == CorpusStats(1, 2, 5, 3, 2)
    assert corpus_stats([]) == CorpusStats(0, 0, 0, 0, 0)


def test_render_stats_rows():
    lines = render_stats(CorpusStats(1092, 10114, 33477, 14584, 38)).splitlines()
    assert len(lines) == 5
    assert lines[0].startswith("Total number of dialogues") and lines[0].endswith("1092")
    assert lines[4].startswith("Different classes of semantic units") and lines[4].endswith("38")


def test_template_parsing(inventory):
    (t,) = parse_templates("from {city} to {city} via {city} in {city} {time:want_arrival}", inventory)
    slots = [x for x in t if isinstance(x, Slot)]
    assert [s.attribute for s in slots] == ["sourcecity", "goalcity", "via_city", "goalcity", "want_arrival"]


@pytest.mark.parametrize("text", ["from {planet}", "to {city:nowhere}", "to {city"])
def test_template_errors(inventory, text):
    with pytest.raises(ConfigError):
        parse_templates(text, inventory)


def test_generate_single_template(grammar, inventory):
    t = parse_templates("from {city} to {city}", inventory)
    (r,) = generate_synthetic_corpus(t, grammar.lexicon, 1, seed=4)
    assert [u.attribute for u in r.ref_annotation] == ["sourcecity", "goalcity"]
    assert r.ref_annotation[0].value != r.ref_annotation[1].value


def test_generate_deterministic(grammar, templates):
    a = generate_synthetic_corpus(templates, grammar.lexicon, 50, seed=9)
    b = generate_synthetic_corpus(templates, grammar.lexicon, 50, seed=9)
    c = generate_synthetic_corpus(templates, grammar.lexicon, 50, seed=10)
    assert dumps_corpus(a) == dumps_corpus(b) != dumps_corpus(c)


def test_generate_errors(grammar, inventory):
    with pytest.raises(ConfigError):
        generate_synthetic_corpus([], grammar.lexicon, 3, seed=1)
    from conceptacc.concept_parser import parse_lexicon

    with pytest.raises(ConfigError):
        generate_synthetic_corpus(parse_templates("to {city}", inventory), parse_lexicon(""), 1, seed=1)


def _length_moments(template, lexicon):
    """Mean and variance of a template's token count (slots independent)."""
    mean = var = 0.0
    for item in template:
        if isinstance(item, str):
            mean += 1
            continue
        lengths = [len(p) for p, _ in lexicon.entries(item.category)]
        mean += fmean(lengths)
        var += pvariance(lengths)
    return mean, var


def test_word_count_expectation(grammar, templates, synthetic):
    moments = [_length_moments(t, grammar.lexicon) for t in templates]
    means = [m for m, _ in moments]
    per_utt_mean = fmean(means)
    per_utt_var = fmean(v for _, v in moments) + pvariance(means)
    n = len(synthetic)
    words = corpus_stats(synthetic).words
    assert abs(words - n * per_utt_mean) < 4 * math.sqrt(n * per_utt_var)


def test_every_generated_record_has_full_coverage(grammar, synthetic):
    for r in synthetic:
        assert grammar.parse(r.ref_transcript) == r.ref_annotation


@given(st.integers(1, 40), st.integers(0, 2**32))
def test_generated_dialogues(grammar, templates, n, seed):
    rs = generate_synthetic_corpus(templates, grammar.lexicon, n, seed)
    assert len(rs) == n and len({r.id for r in rs}) == n
    s = corpus_stats(rs)
    assert 1 <= s.dialogues <= n
    assert s.su_classes <= 8
