import json

from pyfakefs import fake_filesystem_unittest

from evicalc import exceptions
from evicalc.probability.joint import Schema, joint_from_table
from evicalc.probability.modelfile import (
    as_joint,
    dump_model,
    load_model,
    load_models,
    model_from_dict,
)
from evicalc.probability.naivebayes import NaiveBayesModel, joint_from_naive_bayes

COUNTEREXAMPLE = {
    "hypothesis": "H",
    "naive_bayes": {
        "prior": 0.01,
        "findings": [
            {"name": "E1", "p_given_h": 0.99, "p_given_not_h": 0.01},
            {"name": "E2", "p_given_h": 0.99, "p_given_not_h": 0.01},
        ],
    },
}


class TestModelFile(fake_filesystem_unittest.TestCase):
    def setUp(self):
        self.setUpPyfakefs()

    def test_load_naive_bayes(self):
        self.fs.create_file("/models/mycin.json", contents=json.dumps(COUNTEREXAMPLE))
        model = load_model("/models/mycin.json")
        self.assertIsInstance(model, NaiveBayesModel)
        self.assertEqual(model.names, ("E1", "E2"))
        self.assertEqual(model.prior, 0.01)

    def test_load_table_list(self):
        data = {"hypothesis": "D", "evidence": ["F"], "table": [0.4, 0.1, 0.1, 0.4]}
        self.fs.create_file("/models/table.json", contents=json.dumps(data))
        model = load_model("/models/table.json")
        self.assertEqual(model.schema, Schema("D", ("F",)))
        self.assertEqual(model.entries(), (0.4, 0.1, 0.1, 0.4))

    def test_table_mapping_infers_evidence(self):
        model = model_from_dict(
            {"table": {"H,E1": 0.4, "H,~E1": 0.1, "~H,E1": 0.1, "~H,~E1": 0.4}}
        )
        self.assertEqual(model.evidence, ("E1",))

    def test_table_list_needs_evidence(self):
        with self.assertRaises(exceptions.ModelFileError):
            model_from_dict({"table": [0.5, 0.5]})

    def test_neither_table_nor_naive_bayes(self):
        with self.assertRaises(exceptions.ModelFileError):
            model_from_dict({"hypothesis": "H"})

    def test_missing_key(self):
        with self.assertRaises(exceptions.ModelFileError):
            model_from_dict({"naive_bayes": {"findings": []}})

    def test_several_models(self):
        second = dict(COUNTEREXAMPLE, hypothesis="D")
        self.fs.create_file(
            "/models/both.json", contents=json.dumps({"models": [COUNTEREXAMPLE, second]})
        )
        models = load_models("/models/both.json")
        self.assertEqual(list(models), ["H", "D"])
        with self.assertRaises(exceptions.ModelFileError):
            load_model("/models/both.json")

    def test_duplicate_hypothesis(self):
        self.fs.create_file(
            "/models/twice.json",
            contents=json.dumps({"models": [COUNTEREXAMPLE, COUNTEREXAMPLE]}),
        )
        with self.assertRaises(exceptions.ModelFileError):
            load_models("/models/twice.json")

    def test_empty_models(self):
        self.fs.create_file("/models/empty.json", contents='{"models": []}')
        with self.assertRaises(exceptions.ModelFileError):
            load_models("/models/empty.json")

    def test_invalid_json(self):
        self.fs.create_file("/models/broken.json", contents="{not json")
        with self.assertRaises(exceptions.ModelFileError):
            load_models("/models/broken.json")

    def test_not_utf8(self):
        self.fs.create_file("/models/binary.json", contents=b"\xff\xfe{}")
        with self.assertRaises(exceptions.ModelFileError):
            load_models("/models/binary.json")

    def test_malformed_values(self):
        malformed = [
            {"naive_bayes": {"prior": "abc", "findings": []}},
            {"naive_bayes": [1, 2]},
            {"naive_bayes": {"prior": 0.1, "findings": "E1"}},
            {"evidence": ["E1"], "table": ["a", 1, 1, 1]},
        ]
        for i, data in enumerate(malformed):
            with self.subTest(data=data):
                path = f"/models/malformed{i}.json"
                self.fs.create_file(path, contents=json.dumps(data))
                with self.assertRaises(exceptions.ModelFileError):
                    load_models(path)

    def test_table_errors_propagate(self):
        data = {"evidence": ["E1"], "table": [0.5, 0.6, 0.0, 0.0]}
        self.fs.create_file("/models/unnormalized.json", contents=json.dumps(data))
        with self.assertRaises(exceptions.NotNormalizedError):
            load_model("/models/unnormalized.json")

    def test_dump_and_load(self):
        self.fs.create_dir("/out")
        model = model_from_dict(COUNTEREXAMPLE)
        dump_model("/out/model.json", model)
        self.assertEqual(as_joint(load_model("/out/model.json")), joint_from_naive_bayes(model))

        dist = joint_from_table(Schema("H", ("E1",)), [0.4, 0.1, 0.1, 0.4])
        dump_model("/out/table.json", dist)
        self.assertEqual(load_model("/out/table.json"), dist)
