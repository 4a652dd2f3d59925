"""CLI for single Ramsey sequences, evaluated from the composed propagators and from the master equation"""

import dclock.config as config
import dclock.events as events
import dclock.exceptions as exceptions
import dclock.file_system as fs
import dclock.lindblad as lindblad
import dclock.log_utils as log
import dclock.ramsey as ramsey
import dclock.ops.helper as ops_helper


# Exceptions


class OracleMismatch(exceptions.NumericalError):
    """Exception class for composed-propagator and master-equation results that disagree"""
    pass


messages = {
    'RAMSEY': {
        'HELP': 'Excitation probability of one Ramsey sequence from both the analytic composition and the master '
                'equation',
        'OUTPUT': {
            'ANALYTIC': 'P_ex (analytic): ',
            'ORACLE': 'P_ex (oracle): ',
            'DIFF': 'Absolute difference: ',
            'CLOSED_FORM': 'P_ex (closed form): ',
            'RESONANT': 'P_ex (near-resonance form): ',
            'PRINTED': 'P_ex (published formula): ',
            'STEPS': 'Integrator steps: ',
            'TRACE_DEFECT': 'Max trace defect: ',
            'LONG_PULSE': 'Warning: pulse duration is not short against the Ramsey time, tau/T = ',
        },
        'ERROR': {
            'MISMATCH': 'Analytic and oracle probabilities differ by {} (tolerance {})',
        }
    }
}

commands = {
    'RAMSEY': 'ramsey'
}

RESULT_HEADER = ('p_analytic', 'p_oracle', 'abs_diff')
TRAJECTORY_HEADER = ('t', 'rho11', 'rho22', 're_rho12', 'im_rho12')


@events.subscriber(events.events['CLI_REGISTRY'])
def _ramsey_ops_cli(parser, parents=()):
    ops_helper.add_command(parser, commands['RAMSEY'], messages['RAMSEY']['HELP'], parents)


@ops_helper.cli_command(commands['RAMSEY'])
def _ramsey(args, conf):
    """
    Evaluate one Ramsey sequence with both sources and fail when they disagree by more than the oracle tolerance
    The trajectory of the master-equation run (rotating frame) is written when a path is configured
    """
    output = messages['RAMSEY']['OUTPUT']
    p = conf.protocol()
    diagnostics = p.diagnostics()
    if diagnostics.long_pulse:
        log.cli_output('{}{}'.format(output['LONG_PULSE'], diagnostics.tau_over_t))

    p_analytic = ramsey.excitation_probability_full(p)
    result = lindblad.simulate_ramsey_state(p, conf.integrator(), record=conf.trajectory is not None)
    p_oracle = result.state.rho22
    abs_diff = abs(p_analytic - p_oracle)
    log.logger.debug('Ramsey %s: analytic=%s oracle=%s', p, p_analytic, p_oracle)

    log.cli_output('{}{}'.format(output['ANALYTIC'], fs.format_number(p_analytic)))
    log.cli_output('{}{}'.format(output['ORACLE'], fs.format_number(p_oracle)))
    log.cli_output('{}{}'.format(output['DIFF'], fs.format_number(abs_diff)))
    log.cli_output('{}{}'.format(output['CLOSED_FORM'], fs.format_number(ramsey.excitation_probability_closed_form(p))))
    log.cli_output('{}{}'.format(output['RESONANT'], fs.format_number(ramsey.excitation_probability_resonant(
        p.pulse.theta, p.gamma.beta, p.gamma.alpha, p.T))))
    log.cli_output('{}{}'.format(output['PRINTED'], fs.format_number(ramsey.excitation_probability_printed(p))))
    log.cli_output('{}{}'.format(output['STEPS'], result.steps))
    log.cli_output('{}{}'.format(output['TRACE_DEFECT'], fs.format_number(result.max_trace_defect)))

    document = {'parameters': {name: conf.values[name] for name in ('lam', 'omega21', 'theta', 'T', 'alpha', 'beta')}}
    document['parameters']['tau'] = p.pulse.tau
    ops_helper.write_rows(conf, RESULT_HEADER, [(p_analytic, p_oracle, abs_diff)], document)
    if conf.trajectory is not None:
        fs.save_csv(conf.trajectory, TRAJECTORY_HEADER, [
            (point.t, point.rho11, point.rho22, point.rho12.real, point.rho12.imag) for point in result.trajectory
        ])

    if abs_diff > config.CLI_ORACLE_TOLERANCE:
        raise OracleMismatch(messages['RAMSEY']['ERROR']['MISMATCH'].format(abs_diff, config.CLI_ORACLE_TOLERANCE))
