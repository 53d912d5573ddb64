import liesys

if __name__ == '__main__':
    liesys.main()
