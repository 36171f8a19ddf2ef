import json
import unittest

from source.classification import classify
from source.corpus import corpus
from source.plotting import classification_table
from source.plotting import create_orbit_animation
from source.plotting import plot_classification
from source.solver import orbit


class TestPlotting(unittest.TestCase):
    def test_orbit_animation(self):
        fig = create_orbit_animation(orbit(corpus("a2_t2").matrix))
        self.assertEqual(len(fig.frames), 4)
        self.assertEqual(fig.layout.title.text, "Theta-orbit: period 3")

    def test_empty_classification(self):
        fig = plot_classification([])
        self.assertEqual(fig.layout.title.text, "No solutions")
        self.assertEqual(len(classification_table([])), 0)

    def test_classification(self):
        classes = classify(3, 3)
        fig = plot_classification(classes)
        self.assertEqual(len(fig.data), len(classes))
        table = classification_table(classes)
        self.assertEqual(list(table.columns), ["name", "aliases", "fundamental period", "HS-form"])
        self.assertIn("t2_10_3F", set(table["name"]))

    def test_table_records_are_json(self):
        rows = json.loads(classification_table(classify(3, 1)).to_json(orient="records"))
        self.assertEqual(rows, [{"name": "petersen", "aliases": "desargues", "fundamental period": 1, "HS-form": True}])


if __name__ == "__main__":
    unittest.main()
