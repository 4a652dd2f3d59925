import argparse
import math
import os

import dclock.config as config
import dclock.exceptions as exceptions
import dclock.helper as dclock_helper
import dclock.run_config as run_config
import tests.helper as helper


class DefaultsTests(helper.TestCaseWithFS):

    def test_defaults(self):
        conf = run_config.load('ramsey')
        self.assertEqual(1.0, conf.lam)
        self.assertEqual(10.0, conf.T)
        self.assertIsNone(conf.tau)
        self.assertIsNone(conf.output)
        self.assertEqual('csv', conf.format)
        self.assertEqual('default', conf.origins['lam'])

        # Only the fields of the command are resolved
        with self.assertRaises(AttributeError):
            conf.alphas

    def test_frozen(self):
        conf = run_config.load('cpi')
        with self.assertRaises(dclock_helper.Disallowed):
            conf.command = 'ramsey'

    def test_protocol(self):
        conf = run_config.load('ramsey', overrides={'theta': '0.5', 'omega21': '2', 'tau': 'auto'})
        p = conf.protocol()
        self.assertEqual(2.5, p.pulse.omega)
        self.assertEqual(2.0, p.pulse.omega21)
        self.assertAlmostEqual(math.pi / 4, p.pulse.tau)

        cfg = conf.integrator()
        self.assertEqual(config.INTEGRATOR_RESOLUTION, cfg.resolution)
        self.assertFalse(cfg.decohere_during_pulses)

    def test_omega_grid(self):
        conf = run_config.load('scan', overrides={'grid_min': '-1', 'grid_max': '1', 'grid_count': '5'})
        self.assertEqual([-1.0, -0.5, 0.0, 0.5, 1.0], conf.omega_grid(conf.protocol()).tolist())
        self.assertEqual(('analytic',), conf.sources())

        conf = run_config.load('scan', overrides={'grid_min': '-1', 'grid_count': '5', 'source': 'both'})
        self.assertEqual(5, len(conf.omega_grid(conf.protocol())))
        self.assertEqual(('analytic', 'oracle'), conf.sources())

    def test_lists(self):
        conf = run_config.load('optimize', overrides={'alphas': '0.5, 1', 'lambdas': '0,-0.3', 'branches': '1'})
        self.assertEqual((0.5, 1.0), conf.alphas)
        self.assertEqual((0.0, -0.3), conf.lambdas)
        self.assertEqual((1,), conf.branches)
        self.assertEqual(config.DEFAULT_ALPHA_T_BRACKET, conf.bracket)

        self.assertIsNone(run_config.load('optimize', overrides={'lambdas': 'default'}).lambdas)


class PrecedenceTests(helper.TestCaseWithFS):

    def setUp(self):
        super().setUp()
        self.path = self.complete_path('run.ini')
        helper.write_config(self.path, {
            'common': {'lam': '2.0', 'T': '5', 'dimension': '4'},
            'ramsey': {'T': '7', 'alpha': '0.1'},
        })

    def test_sections(self):
        conf = run_config.load('ramsey', self.path)

        # The command section overrides [common], which overrides the defaults
        self.assertEqual(2.0, conf.lam)
        self.assertEqual(7.0, conf.T)
        self.assertEqual(0.1, conf.alpha)
        self.assertEqual(0.0, conf.beta)
        self.assertEqual('{} [common]'.format(self.path), conf.origins['lam'])
        self.assertEqual('{} [ramsey]'.format(self.path), conf.origins['T'])
        self.assertEqual('default', conf.origins['beta'])

    def test_common_fields_of_other_commands(self):
        # [common] may hold fields another command uses
        self.assertEqual(4, run_config.load('cpi', self.path).dimension)
        self.assertEqual(5.0, run_config.load('scan', self.path).T)

    def test_flags_win(self):
        conf = run_config.load('ramsey', self.path, {'T': '3', 'lam': None})
        self.assertEqual(3.0, conf.T)
        self.assertEqual('flag --T', conf.origins['T'])
        self.assertEqual(2.0, conf.lam)

    def test_from_args(self):
        parser = argparse.ArgumentParser()
        run_config.add_arguments(parser, 'ramsey')
        args = parser.parse_args(['-c', self.path, '--alpha', '0.2', '--decohere-pulses'])
        conf = run_config.from_args('ramsey', args)
        self.assertEqual(0.2, conf.alpha)
        self.assertTrue(conf.decohere_pulses)
        self.assertEqual(7.0, conf.T)


class ValidationTests(helper.TestCaseWithFS):

    def _assert_invalid(self, command, overrides, fragment, path=None):
        with self.assertRaises(exceptions.CLIValidationException) as ctx:
            run_config.load(command, path, overrides)
        self.assertIn(fragment, str(ctx.exception))

    def test_field_errors(self):
        self._assert_invalid('ramsey', {'lam': '0'}, 'Field "lam" (flag --lam): must be positive')
        self._assert_invalid('ramsey', {'lam': 'abc'}, 'Field "lam" (flag --lam): cannot parse "abc"')
        self._assert_invalid('ramsey', {'T': '-1'}, 'Field "T"')
        self._assert_invalid('ramsey', {'alpha': '-0.1'}, 'must be non-negative')
        self._assert_invalid('ramsey', {'theta': 'nan'}, 'must be finite')
        self._assert_invalid('ramsey', {'decohere_pulses': 'maybe'}, 'Field "decohere_pulses"')
        self._assert_invalid('scan', {'source': 'exact'}, 'must be one of analytic, oracle, both')
        self._assert_invalid('scan', {'grid_count': '1'}, 'must be at least 2')
        self._assert_invalid('cpi', {'dimension': '9'}, 'must lie in [2, 8]')
        self._assert_invalid('optimize', {'branches': '1,2'}, 'must be 1 or -1 (2)')
        self._assert_invalid('optimize', {'alphas': ''}, 'must not be empty')

    def test_cross_field_errors(self):
        self._assert_invalid('ramsey', {'format': 'svg'}, '"ramsey" cannot write svg output')
        self._assert_invalid('optimize', {'bracket_low': '5', 'bracket_high': '1'}, 'must be below bracket_high')
        self._assert_invalid('scan', {'grid_min': '1', 'grid_max': '0'}, 'must be below grid_max')

    def test_output_directory(self):
        missing = self.complete_path(os.path.join('missing', 'out.csv'))
        self._assert_invalid('ramsey', {'output': missing}, 'directory does not exist')
        self.assertEqual(self.complete_path('out.csv'),
                         run_config.load('ramsey', overrides={'output': self.complete_path('out.csv')}).output)

    def test_file_errors(self):
        self._assert_invalid('ramsey', {}, 'Config file not found', path=self.complete_path('missing.ini'))

        path = self.complete_path('bad.ini')
        with open(path, 'w') as out:
            out.write('lam = 1\n')
        self._assert_invalid('ramsey', {}, 'Malformed config file', path=path)

        helper.write_config(path, {'common': {'speed': '1'}})
        self._assert_invalid('ramsey', {}, 'Field "speed" ({} [common]): unknown field'.format(path), path=path)

        helper.write_config(path, {'ramsey': {'dimension': '3'}})
        self._assert_invalid('ramsey', {}, 'not used by "ramsey"', path=path)

        helper.write_config(path, {'ramsey': {'lam': '-2'}})
        self._assert_invalid('ramsey', {}, 'Field "lam" ({} [ramsey])'.format(path), path=path)
