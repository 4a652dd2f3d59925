"""CLI for the order-unity sweep of optimal Ramsey times"""

import dclock.config as config
import dclock.events as events
import dclock.file_system as fs
import dclock.log_utils as log
import dclock.optimizer as optimizer
import dclock.ops.helper as ops_helper

messages = {
    'OPTIMIZE': {
        'HELP': 'Solve for the optimal Ramsey time over a grid of dephasing rates and Lagrange multipliers',
        'OUTPUT': {
            'CELLS': 'Cells solved: ',
            'ROOTS': 'Interior roots: ',
            'NO_ROOT': 'Cells without an interior root: ',
            'FAILED': 'Cells with numerical failures: ',
            'SUMMARY': 'alpha T min/median/max: ',
            'NO_SUMMARY': 'alpha T min/median/max: none',
            'PRINTED': 'Roots where the printed stationarity form also vanishes: ',
            'OUTSIDE': 'Roots outside the order-unity band {}: ',
        },
    }
}

commands = {
    'OPTIMIZE': 'optimize'
}

SWEEP_HEADER = ('alpha', 'lambda_multiplier', 'theta_branch', 't_star', 'alpha_t', 'residual', 'status',
                'uncertainty', 'uncertainty_printed', 'printed_residual')


@events.subscriber(events.events['CLI_REGISTRY'])
def _optimize_ops_cli(parser, parents=()):
    ops_helper.add_command(parser, commands['OPTIMIZE'], messages['OPTIMIZE']['HELP'], parents)


def _sweep_series(result):
    """alpha T against Lambda, one series per (alpha, branch) with at least one root"""
    series = []
    keys = []
    for row in result.rows:
        if (row.alpha, row.theta_branch) not in keys:
            keys.append((row.alpha, row.theta_branch))
    for alpha, branch in keys:
        rows = [row for row in result.rows
                if row.alpha == alpha and row.theta_branch == branch and row.status == optimizer.STATUS_OK]
        if rows:
            label = 'alpha={} Theta={}alpha'.format(fs.format_number(alpha), '+' if branch > 0 else '-')
            series.append((label, [row.lambda_multiplier for row in rows], [row.alpha_t for row in rows]))
    return series


@ops_helper.cli_command(commands['OPTIMIZE'])
def _optimize(args, conf):
    """
    Sweep (alpha, Lambda, Theta = +-alpha) and report the spread of the optimal alpha T
    Cells without a constrained minimum are kept in the table with their status
    """
    output = messages['OPTIMIZE']['OUTPUT']
    result = optimizer.order_unity_sweep(conf.alphas, conf.lambdas, conf.branches, conf.bracket, conf.subdivisions)
    statuses = [row.status for row in result.rows]

    log.cli_output('{}{}'.format(output['CELLS'], len(result.rows)))
    log.cli_output('{}{}'.format(output['ROOTS'], result.summary.roots))
    log.cli_output('{}{}'.format(output['NO_ROOT'], statuses.count(optimizer.STATUS_NO_ROOT)))
    log.cli_output('{}{}'.format(output['FAILED'], statuses.count(optimizer.STATUS_FAILED)))
    if result.summary.roots > 0:
        log.cli_output('{}{} / {} / {}'.format(output['SUMMARY'], fs.format_number(result.summary.minimum),
                                               fs.format_number(result.summary.median),
                                               fs.format_number(result.summary.maximum)))
        agreeing = optimizer.printed_agreement(result)
        log.cli_output('{}{} / {}'.format(output['PRINTED'], len(agreeing), result.summary.roots))
    else:
        log.cli_output(output['NO_SUMMARY'])
    outside = optimizer.outside_band(result)
    if outside:
        log.cli_output('{}{}'.format(output['OUTSIDE'].format(config.ORDER_UNITY_BAND), len(outside)))

    series = _sweep_series(result)
    title = 'Optimal alpha T against Lambda'
    if conf.output is not None and conf.format == 'svg':
        fs.save_svg_plot(conf.output, series, 'Lambda', 'alpha T', title)
    ops_helper.write_rows(conf, SWEEP_HEADER, result.rows, {'summary': result.summary._asdict()})
    if conf.plot is not None:
        fs.save_svg_plot(conf.plot, series, 'Lambda', 'alpha T', title)
