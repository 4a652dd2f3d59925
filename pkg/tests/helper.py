import csv
import json
import os
import shutil
import unittest

import numpy as np

import dclock.config as config


def write_config(path, sections):
    """Write an INI file from a dictionary of section name to dictionary of key to text"""
    with open(path, 'w') as out:
        for section, values in sections.items():
            out.write('[{}]\n'.format(section))
            for key, value in values.items():
                out.write('{} = {}\n'.format(key, value))
            out.write('\n')


def load_json(path):
    with open(path, 'r') as jf:
        return json.load(jf)


def load_csv(path):
    """Header and rows of a CSV result file, all values as strings"""
    with open(path, 'r', newline='') as cf:
        reader = csv.reader(cf)
        header = next(reader)
        return header, [row for row in reader]


def random_unitary(rng, d=2):
    """Haar-like unitary from the QR decomposition of a complex Gaussian matrix"""
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


class TestCaseWithFS(unittest.TestCase):
    """
    Base class for all tests which write output files
    - Creates test directory and startup and deletes it during cleanup
    """
    TESTS_BASE = config.TEST_DIR

    def setUp(self):
        shutil.rmtree(self.TESTS_BASE, ignore_errors=True)
        os.makedirs(self.TESTS_BASE)

    def tearDown(self):
        shutil.rmtree(self.TESTS_BASE)

    @staticmethod
    def complete_path(path):
        return os.path.join(TestCaseWithFS.TESTS_BASE, path)

    @staticmethod
    def read_text(path):
        with open(path, 'r') as f:
            return f.read()
