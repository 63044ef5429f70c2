'''
Coordinate-grid rendering of bipartite sets (A index as row, B index as
column); broad-support states go to a legend
'''

# nlcert imports
from .common import NotSupported
from .families import figure_labels
from .model import coordinates
from .parser import print_ket


MAX_COORDS = 4


def _kets(s):
    return ''.join(print_ket(f) for f in s.factors)


def grid_cells(stateset):
    '''
    (cell -> labels, legend labels); small states mark their coordinates
    '''

    if len(stateset.space) != 2:
        raise NotSupported('rendering needs a bipartite set, got %d parties'
                           % (len(stateset.space),), 'render')
    short = figure_labels(stateset)
    cells = {}
    legend = []
    for s in stateset:
        name = short.get(s.label, s.label)
        coords = coordinates(s)
        if len(coords) > MAX_COORDS:
            legend.append((name, s))
            continue
        for c in sorted(coords):
            cells.setdefault(c, []).append(name)
    return cells, legend


def render_text(stateset):
    cells, legend = grid_cells(stateset)
    dA, dB = stateset.space.dims()
    names = {c: '/'.join(v) for c, v in cells.items()}
    width = max([len(n) for n in names.values()] + [len(str(dB - 1)), 1])

    lines = [' ' * 3 + ' '.join(str(j).rjust(width) for j in range(dB))]
    for i in range(dA):
        row = [names.get((i, j), '.').rjust(width) for j in range(dB)]
        lines.append('%2d ' % (i,) + ' '.join(row))
    if legend:
        lines.append('')
        lines.append('legend:')
        for name, s in legend:
            lines.append('  %s = %s' % (name, _kets(s)))
    return '\n'.join(lines)


def render_svg(stateset, path, cell=0.5):
    import matplotlib
    matplotlib.use('Agg')
    import matplotlib.pyplot as plt
    from matplotlib.patches import Rectangle

    cells, legend = grid_cells(stateset)
    dA, dB = stateset.space.dims()
    fig, ax = plt.subplots(figsize=(cell * dB + 1, cell * dA + 1))
    for (i, j), names in cells.items():
        ax.add_patch(Rectangle((j, i), 1, 1, facecolor='#dde6f2',
                               edgecolor='black', linewidth=0.8))
        ax.text(j + 0.5, i + 0.5, '/'.join(names), ha='center', va='center',
                fontsize=8)
    ax.set_xlim(0, dB)
    ax.set_ylim(dA, 0)
    ax.set_xticks([j + 0.5 for j in range(dB)])
    ax.set_xticklabels(range(dB))
    ax.set_yticks([i + 0.5 for i in range(dA)])
    ax.set_yticklabels(range(dA))
    ax.set_xlabel(stateset.space.labels()[1])
    ax.set_ylabel(stateset.space.labels()[0])
    ax.set_aspect('equal')
    ax.grid(False)
    if legend:
        ax.set_title('; '.join(
            '%s = %s' % (name, _kets(s))
            for name, s in legend), fontsize=7)
    fig.savefig(path, format='svg', bbox_inches='tight')
    plt.close(fig)
