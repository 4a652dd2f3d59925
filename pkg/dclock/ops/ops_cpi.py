"""CLI for conditional probabilities of a clock entangled with the rest of the universe"""

import dclock.cpi as cpi
import dclock.events as events
import dclock.file_system as fs
import dclock.log_utils as log
import dclock.ops.helper as ops_helper

messages = {
    'CPI': {
        'HELP': 'Compare clock-reading probabilities with the mirror probabilities on the remainder',
        'OUTPUT': {
            'STATE': 'State: ',
            'ENTANGLED': 'maximally entangled',
            'PRODUCT': 'product',
            'SCHMIDT_RANK': 'Schmidt rank: ',
            'MAX_DIFF': 'Max |P_C - P_R|: ',
            'TOTAL_VARIATION': 'Total variation distance: ',
            'SUM_P_C': 'Sum of P_C: ',
            'BALANCE': 'Global energy of paired Hamiltonians: ',
            'STATIONARITY': 'Global stationarity defect: ',
        },
    }
}

commands = {
    'CPI': 'cpi'
}

DISTRIBUTION_HEADER = ('x', 'p_c', 'p_r')


@events.subscriber(events.events['CLI_REGISTRY'])
def _cpi_ops_cli(parser, parents=()):
    ops_helper.add_command(parser, commands['CPI'], messages['CPI']['HELP'], parents)


@ops_helper.cli_command(commands['CPI'])
def _cpi(args, conf):
    """
    Build the default clock of the configured dimension, start it in the uniform superposition and compare the
    period-averaged clock distribution with the mirror distribution of the remainder
    """
    output = messages['CPI']['OUTPUT']
    d = conf.dimension
    state = cpi.product_state(d) if conf.product else cpi.build_entangled_state(d)
    clock = cpi.default_clock(d, conf.clock_omega)
    check = cpi.mirror_probability_check(state, clock, cpi.uniform_clock_state(d), points=conf.points)
    H_C, H_R = cpi.paired_hamiltonians(state, clock.H_C.diagonal().real)
    balance = cpi.hamiltonian_balance(state, H_C, H_R)

    log.cli_output('{}{}'.format(output['STATE'], output['PRODUCT'] if conf.product else output['ENTANGLED']))
    log.cli_output('{}{}'.format(output['SCHMIDT_RANK'], cpi.schmidt_rank(state)))
    log.cli_output('{}{}'.format(output['MAX_DIFF'], fs.format_number(check.max_difference)))
    log.cli_output('{}{}'.format(output['TOTAL_VARIATION'], fs.format_number(check.total_variation)))
    log.cli_output('{}{}'.format(output['SUM_P_C'], fs.format_number(float(check.p_c.sum()))))
    log.cli_output('{}{}'.format(output['BALANCE'], fs.format_number(balance)))
    log.cli_output('{}{}'.format(output['STATIONARITY'], fs.format_number(
        cpi.global_stationarity_defect(state, H_C, H_R))))

    rows = list(zip(check.values, check.p_c, check.p_r))
    ops_helper.write_rows(conf, DISTRIBUTION_HEADER, rows, {
        'max_difference': check.max_difference,
        'total_variation': check.total_variation,
        'maximally_entangled': check.maximally_entangled,
    })
