import logging
from collections import namedtuple

from tqdm import tqdm

from wronski.errors import PoleError, RedrawExhaustedError
from wronski.utils.log import logger, TqdmToLogger, TrialAccumulator
from wronski.utils.misc import get_rng
from wronski.utils.serialization import to_json

MAX_REDRAWS = 20

TrialOutcome = namedtuple('TrialOutcome', ['passed', 'residual', 'redraws', 'detail'], defaults=(None, 0, None))


class TrialRunner(object):
    """Runs a seeded batch of checks; one generator feeds every trial in index order.

    ``trial(rng, index)`` returns a ``TrialOutcome``. Exceptions listed in ``redraw_errors``
    (poles of a transition map by default) discard the draw and call the trial again.
    """

    def __init__(self, name, trials, seed=None,
                 max_redraws=MAX_REDRAWS,
                 redraw_errors=(PoleError,),
                 show_progress=True):
        self.name = name
        self.trials = trials
        self.rng = get_rng(seed)
        self.max_redraws = max_redraws
        self.redraw_errors = tuple(redraw_errors)
        self.show_progress = show_progress

        self.stats = TrialAccumulator()
        self.failures = []
        self.tqdm_out = TqdmToLogger(logger, level=logging.INFO)

    def run(self, trial, trials=None):
        trials = self.trials if trials is None else trials
        logger.info(f'{self.name}: {trials} trial(s)')

        tbar = tqdm(range(trials), file=self.tqdm_out, ncols=100, disable=not self.show_progress)
        for index in tbar:
            outcome = self._attempt(trial, index)
            self.stats.add(outcome.passed, outcome.residual)
            self.stats.add_redraws(outcome.redraws)
            if not outcome.passed:
                self.failures.append({'trial': index, 'detail': outcome.detail})
                logger.error(f'{self.name}: trial {index} failed: {to_json(outcome.detail)}')
            tbar.set_description(f'{self.name}, failed {self.stats.failed}')

        logger.info(f'{self.name}: {self.stats.passed}/{len(self.stats)} passed, '
                    f'{self.stats.redraws} redraw(s)')
        return self.report()

    def _attempt(self, trial, index):
        for redraws in range(self.max_redraws + 1):
            try:
                outcome = trial(self.rng, index)
            except self.redraw_errors as e:
                logger.info(f'{self.name}: trial {index}: {e}; redrawing')
                continue
            return outcome._replace(redraws=outcome.redraws + redraws)
        raise RedrawExhaustedError(f'{self.name}: trial {index}', self.max_redraws)

    @property
    def ok(self):
        return self.stats.ok

    def report(self):
        report = {'check': self.name, 'status': 'PASS' if self.ok else 'FAIL'}
        report.update(self.stats.as_dict())
        report['failures'] = list(self.failures)
        return report
