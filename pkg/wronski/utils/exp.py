import json
import sys
import pprint
import argparse
from pathlib import Path

import yaml
from easydict import EasyDict as edict

from .log import logger, add_logging

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / 'config.yml'


def init_run(args, prefix):
    cfg = load_config_file(args.config_path, return_edict=True) if Path(args.config_path).exists() else edict()
    if getattr(args, 'config', None) == '-':
        cfg.update(load_run_config(sys.stdin))
    update_config(cfg, args)

    if cfg.get('logs_path') or cfg.get('LOGS_PATH'):
        logs_path = Path(cfg.get('logs_path') or cfg.LOGS_PATH)
        add_logging(logs_path, prefix=prefix)

    logger.debug('Run with config:')
    logger.debug(pprint.pformat(cfg, indent=4))
    return cfg


def load_run_config(stream):
    """A JSON RunConfig; keys use the flag names (``rank``, ``word``, ``params``, ...)."""
    try:
        data = json.load(stream)
    except json.JSONDecodeError as e:
        raise argparse.ArgumentTypeError(f'invalid JSON run config: {e}')
    if not isinstance(data, dict):
        raise argparse.ArgumentTypeError('run config must be a JSON object')
    return {k.replace('-', '_'): v for k, v in data.items()}


def update_config(cfg, args):
    """Command-line values override config values; unset (None) flags keep the config default."""
    for param_name, value in vars(args).items():
        if value is not None:
            cfg[param_name] = value
        elif param_name not in cfg and param_name.upper() in cfg:
            cfg[param_name] = cfg[param_name.upper()]


def load_config_file(config_path, return_edict=False):
    with open(config_path, 'r') as f:
        cfg = yaml.safe_load(f) or dict()

    return edict(cfg) if return_edict else cfg


def str2bool(v):
    if isinstance(v, bool):
        return v
    if v.lower() in ('yes', 'true', 't', 'y', '1'):
        return True
    elif v.lower() in ('no', 'false', 'f', 'n', '0'):
        return False
    else:
        raise argparse.ArgumentTypeError('Boolean value expected.')
