"""CLI for lineshape scans, central fringe widths and contrast decay tables"""

import math
import os

import numpy as np

import dclock.config as config
import dclock.events as events
import dclock.file_system as fs
import dclock.lineshape as lineshape
import dclock.log_utils as log
import dclock.ramsey as ramsey
import dclock.ops.helper as ops_helper

messages = {
    'SCAN': {
        'HELP': 'Scan the excitation probability over a grid of drive frequencies',
        'OUTPUT': {
            'POINTS': 'Points scanned: ',
            'CENTER': 'Expected central fringe: ',
            'SOURCE_DIFF': 'Max |analytic - oracle|: ',
        },
    },
    'FWHM': {
        'HELP': 'Scan the lineshape and measure the central fringe width and contrast',
        'OUTPUT': {
            'SOURCE': 'Central fringe ({}): ',
            'CENTER': '  centre: ',
            'WIDTH': '  width: ',
            'EXPECTED_WIDTH': '  pi/T: ',
            'CONTRAST': '  contrast: ',
            'EXPECTED_CONTRAST': '  e^(-alpha T): ',
            'DECAY': 'Contrast decay ({}), alpha T = ',
            'REGIME': 'Warning: lam T = {} is below {}; theta << lam fails across the fringe and the width '
                      'deviates from pi/T',
        },
    },
}

commands = {
    'SCAN': 'scan',
    'FWHM': 'fwhm',
}

SCAN_HEADER = ('omega', 'p_ex', 'source')
DECAY_HEADER = ('source', 'alpha_t', 'contrast', 'expected', 'deviation')
FWHM_HEADER = ('source', 'center', 'width', 'contrast', 'expected_center', 'expected_width', 'expected_contrast')


@events.subscriber(events.events['CLI_REGISTRY'])
def _lineshape_ops_cli(parser, parents=()):
    ops_helper.add_command(parser, commands['SCAN'], messages['SCAN']['HELP'], parents)
    ops_helper.add_command(parser, commands['FWHM'], messages['FWHM']['HELP'], parents)


# Helpers


def _scan_all(conf, p):
    """One LineshapeScan per configured source, over the same grid"""
    omegas = conf.omega_grid(p)
    cfg = conf.integrator()
    return [lineshape.scan_lineshape(p, omegas, source, cfg) for source in conf.sources()]


def _scan_rows(scans):
    return [(omega, probability, scan.source)
            for scan in scans for omega, probability in zip(scan.omegas, scan.probabilities)]


def _scan_series(scans):
    return [(scan.source, scan.omegas.tolist(), scan.probabilities.tolist()) for scan in scans]


def _report_scans(p, scans):
    output = messages['SCAN']['OUTPUT']
    log.cli_output('{}{}'.format(output['POINTS'], len(scans[0])))
    log.cli_output('{}{}'.format(output['CENTER'], fs.format_number(lineshape.fringe_center(p))))
    if len(scans) == 2:
        difference = float(np.max(np.abs(scans[0].probabilities - scans[1].probabilities)))
        log.cli_output('{}{}'.format(output['SOURCE_DIFF'], fs.format_number(difference)))


def _write_scans(conf, scans, document=None):
    title = 'Ramsey lineshape, T={}'.format(fs.format_number(conf.T))
    if conf.output is not None and conf.format == 'svg':
        fs.save_svg_plot(conf.output, _scan_series(scans), 'omega', 'P_ex', title)
    ops_helper.write_rows(conf, SCAN_HEADER, _scan_rows(scans), document)
    if conf.plot is not None:
        fs.save_svg_plot(conf.plot, _scan_series(scans), 'omega', 'P_ex', title)


def _fwhm_path(output):
    """CSV next to the scan table holding the central fringe results, 'scan.csv' -> 'scan.fwhm.csv'"""
    root, _ = os.path.splitext(output)
    return root + '.fwhm.csv'


def _narrow_pulse_regime(p):
    """lam T when it is too small for widths of pi/T, else None"""
    lambda_t = p.pulse.lam * p.T
    if lambda_t < config.FWHM_MIN_LAMBDA_T:
        log.logger.warning('lam T = %s is below %s, fringe widths deviate from pi/T',
                           lambda_t, config.FWHM_MIN_LAMBDA_T)
        return lambda_t
    return None


def _decay_rows(conf, p):
    """Fringe contrast at evenly spaced alpha T up to 'decay_max', one block of rows per source"""
    alpha_ts = np.linspace(conf.decay_max / conf.decay_points, conf.decay_max, conf.decay_points)
    omegas = conf.omega_grid(p)
    rows = []
    for source in conf.sources():
        for alpha_t in alpha_ts:
            gamma = ramsey.DecoherenceSpec(alpha_t / p.T, p.gamma.beta)
            decayed = ramsey.RamseyProtocol(p.pulse, p.T, gamma)
            result = lineshape.fringe_contrast(
                lineshape.scan_lineshape(decayed, omegas, source, conf.integrator()), alpha_t)
            rows.append((source, float(alpha_t), result.contrast, result.expected, result.deviation))
    return rows


# Commands


@ops_helper.cli_command(commands['SCAN'])
def _scan(args, conf):
    """Lineshape over the configured grid, for the analytic composition, the master equation or both"""
    p = conf.protocol()
    scans = _scan_all(conf, p)
    _report_scans(p, scans)
    _write_scans(conf, scans)


@ops_helper.cli_command(commands['FWHM'])
def _fwhm(args, conf):
    """
    Lineshape scan followed by the mid-contrast width and contrast of the central fringe for every source
    With a positive 'decay_points' the contrast is also tabulated against alpha T
    """
    output = messages['FWHM']['OUTPUT']
    p = conf.protocol()
    scans = _scan_all(conf, p)
    _report_scans(p, scans)
    lambda_t = _narrow_pulse_regime(p)
    if lambda_t is not None:
        log.cli_output(output['REGIME'].format(fs.format_number(lambda_t), fs.format_number(config.FWHM_MIN_LAMBDA_T)))

    expected = (lineshape.fringe_center(p), math.pi / p.T, math.exp(-p.gamma.alpha * p.T))
    widths = {}
    fwhm_rows = []
    for scan in scans:
        result = lineshape.fwhm(scan)
        widths[scan.source] = result._asdict()
        fwhm_rows.append((scan.source,) + tuple(result) + expected)
        log.cli_output(output['SOURCE'].format(scan.source))
        log.cli_output('{}{}'.format(output['CENTER'], fs.format_number(result.center)))
        log.cli_output('{}{}'.format(output['WIDTH'], fs.format_number(result.width)))
        log.cli_output('{}{}'.format(output['EXPECTED_WIDTH'], fs.format_number(expected[1])))
        log.cli_output('{}{}'.format(output['CONTRAST'], fs.format_number(result.contrast)))
        log.cli_output('{}{}'.format(output['EXPECTED_CONTRAST'], fs.format_number(expected[2])))
    _write_scans(conf, scans, {'fwhm': widths})
    if conf.output is not None and conf.format == 'csv':
        fs.save_csv(_fwhm_path(conf.output), FWHM_HEADER, fwhm_rows)

    if conf.decay_points > 0:
        rows = _decay_rows(conf, p)
        for source, alpha_t, contrast, expected, _ in rows:
            log.cli_output('{}{}: {} (expected {})'.format(output['DECAY'].format(source), fs.format_number(alpha_t),
                                                            fs.format_number(contrast), fs.format_number(expected)))
        if conf.decay_output is not None:
            fs.save_csv(conf.decay_output, DECAY_HEADER, rows)
        if conf.decay_plot is not None:
            series = [(source, [r[1] for r in rows if r[0] == source], [r[2] for r in rows if r[0] == source])
                      for source in conf.sources()]
            series.append(('e^(-alpha T)', [r[1] for r in rows if r[0] == series[0][0]],
                           [math.exp(-r[1]) for r in rows if r[0] == series[0][0]]))
            fs.save_svg_plot(conf.decay_plot, series, 'alpha T', 'contrast', 'Fringe contrast decay')
