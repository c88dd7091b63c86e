# pidispatch/client.py
#*************************************************************************************
# Class Name: Microgrid
# Super Class: None
#
# Revision      Date                            Release Comment
# --------   ----------   ------------------------------------------------------------
#   1.0      03/09/2026   Initial Release
#   1.1      03/13/2026   Dataset and model persistence helpers.
#
# File Description
# ------------------------------------------------------------------------------------
# Entry object of the library. Loads a microgrid configuration and owns one
# sub-object per concern, each constructed with this object as its parent.
#
# Class Methods
# ------------------------------------------------------------------------------------
#         Name                                      Description
# --------------------         -------------------------------------------------------
# __init__()                   Constructor
#
# load_dataset()               Reads a dataset CSV and its metadata sidecar.
#
# save_dataset()               Writes a dataset CSV and its metadata sidecar.
#
# load_model()                 Reads a model checkpoint.
#
# save_model()                 Writes a model checkpoint.
#*************************************************************************************
# Imported Packages/Variables:
import logging
import os

from pidispatch.bench import Bench
from pidispatch.config import default_config, load_config
from pidispatch.datagen import DataGenerator, load_dataset, save_dataset
from pidispatch.exceptions import MissingInputError
from pidispatch.nn import load_model, save_model
from pidispatch.oracle import Oracle
from pidispatch.trainer import Trainer
from . import __version__

logger = logging.getLogger(__name__)


class Microgrid(object):
    """This object holds a microgrid configuration and the dispatch, data, training
    and benchmarking sub-objects working on it.

    Arguments
    ---------
    1. config_path {string} -- Optional INI configuration file; the built-in synthetic
       microgrid is used when omitted.

    Raises
    ------
    1. ConfigError: the file is unreadable or holds an invalid value.

    Returns
    -------
    Class -- Instance of Microgrid.
    """

    VERSION = 'pidispatch {0}'.format(__version__)

    #*************************************************************************************
    # Constructor: __init__(self, String)
    #
    # Description
    # ------------------------------------------------------------------------------------
    # This constructor loads the configuration and instantiates all sub-classes.
    #
    # ------------------------------- Arguments ------------------------------------------
    #        Type               Name                         Description
    # --------------------  -------------  -----------------------------------------------
    # string                config_path    Path to an INI configuration file, or None.
    #*************************************************************************************
    def __init__(self, config_path=None):
        self.config = default_config() if config_path is None else load_config(config_path)
        self.oracle = Oracle(self)
        self.data = DataGenerator(self)
        self.trainer = Trainer(self)
        self.bench = Bench(self)
        logger.debug('%s ready with %d unit(s)', self.VERSION, len(self.config.fleet))

    def load_dataset(self, path):
        return load_dataset(path)

    def save_dataset(self, dataset, path):
        save_dataset(dataset, path)

    def load_model(self, path):
        """Reads a checkpoint written by save_model().

        Raises
        ------
        1. MissingInputError: the file does not exist.
        2. ParseError: the checkpoint is malformed.
        """
        if not os.path.exists(path):
            raise MissingInputError(path)
        return load_model(path)

    def save_model(self, model, path):
        save_model(model, path)
