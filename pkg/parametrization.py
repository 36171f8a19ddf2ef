import json
from pathlib import Path

from viktor.parametrization import IsEqual
from viktor.parametrization import Lookup
from viktor.parametrization import NumberField
from viktor.parametrization import OptionField
from viktor.parametrization import OptionListElement
from viktor.parametrization import Parametrization
from viktor.parametrization import Section
from viktor.parametrization import Text
from viktor.parametrization import TextAreaField

from source.corpus import corpus_names

_source_options = [OptionListElement("corpus", "Corpus"), OptionListElement("text", "Paste a matrix")]

_corpus_options = [OptionListElement(name, name) for name in corpus_names()]

# Use a json file with all the descriptions to not clutter this file
with open(Path(__file__).parent / "source" / "lib" / "descriptions.json") as json_file:
    descriptions = json.load(json_file)


class AppParametrization(Parametrization):
    input = Section("Matrix")
    input.text_intro = Text(descriptions["Input"])
    input.source = OptionField("Source", options=_source_options, default="corpus")
    input.name = OptionField(
        "Corpus matrix",
        options=_corpus_options,
        default="a2_t2",
        visible=IsEqual(Lookup("input.source"), "corpus"),
        description=descriptions["Corpus"],
    )
    input.text = TextAreaField(
        "Matrix",
        default="# labels: a b c d e\n5\n0 1 0 0 1\n1 0 1 0 0\n0 1 0 1 0\n0 0 1 0 1\n1 0 0 1 0",
        visible=IsEqual(Lookup("input.source"), "text"),
    )

    orbit = Section("Orbit")
    orbit.text = Text(descriptions["Orbit"])
    orbit.max_steps = NumberField(
        "Max steps", min=1, max=16, step=1, default=8, description=descriptions["Max steps"]
    )

    classification = Section("Classification")
    classification.text = Text(descriptions["Classification"])
    classification.kappa = OptionField(
        "Kappa", options=[2, 3], default=3, description=descriptions["Kappa"]
    )
    classification.m = NumberField(
        "m", min=1, max=8, step=1, default=3, description=descriptions["Period"]
    )
